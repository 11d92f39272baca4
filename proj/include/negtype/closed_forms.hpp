#pragma once

#include "negtype/certificate.hpp"
#include "negtype/distortion.hpp"
#include "negtype/space.hpp"

namespace negtype {

// Exact reference data for the bipartite graph K_{m,n}: supremal exponent,
// closed-form distortion, the direct-sum optimal embedding and its rank-1
// certificate.
struct KmnReference {
  int m = 0;
  int n = 0;
  double supremal = 0.0;
  PSDCertificate certificate;

  double c2_at(double p) const;
  Embedding embedding_at(double p) const;
};

// Reference data for the Hamming cube H_n: identity embedding on {0,1}^n and
// the cube certificate (diagonal n-1, -1 at distance 1, +1 at distance n).
struct HammingReference {
  int n = 0;
  Embedding embedding;
  PSDCertificate certificate;  // requires n >= 2

  double c2_at(double p) const;
};

// The standard unit-distance placement of K_n in R^{n-1}; every point has
// norm ((1 - 1/n)/2)^{1/2}.
Embedding simplex_embedding(int n);

KmnReference kmn_reference(int m, int n);
HammingReference hamming_reference(int n);

}  // namespace negtype
