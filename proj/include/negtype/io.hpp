#pragma once

#include <Eigen/Dense>
#include <string>

#include "negtype/space.hpp"

namespace negtype {

// Distance-matrix input: CSV (optional label header row) or the JSON form
// {"labels":[...],"dist":[[...]]}. Graph input: first line "n <count>", then
// one "i j" edge per line (0-based). load_space sniffs the content and, for
// graph files, returns the shortest-path metric.
SemiMetricSpace parse_csv_space(const std::string& text);
SemiMetricSpace parse_json_space(const std::string& text);
GraphSpec parse_graph(const std::string& text);
SemiMetricSpace load_space(const std::string& path);

// Parses a bare matrix (CSV or JSON array-of-arrays); used for user-supplied
// certificates.
Eigen::MatrixXd load_matrix(const std::string& path);

std::string read_file(const std::string& path);

// Deterministic JSON emission: all floating-point values are printed with 12
// significant digits so reports are byte-identical across runs.
class JsonWriter {
 public:
  std::string take() { return std::move(out_); }

  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(const std::string& k);
  void value(double v);
  void value(int v);
  void value(bool v);
  void value(const std::string& s);
  void matrix(const Eigen::MatrixXd& m);
  void vector(const Eigen::VectorXd& v);

  static std::string format_double(double v);

 private:
  void comma();

  std::string out_;
  bool fresh_ = true;  // no element emitted yet at this nesting level
};

}  // namespace negtype
