#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "negtype/io.hpp"
#include "negtype/space.hpp"

using namespace negtype;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/negtype_io_") + name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("CSV parsing with and without a label header") {
  auto plain = parse_csv_space("0,1,2\n1,0,1\n2,1,0\n");
  CHECK(plain.n() == 3);
  CHECK(plain.dist(0, 2) == 2.0);

  auto labeled = parse_csv_space("a,b\n0,1\n1,0\n");
  CHECK(labeled.n() == 2);
  CHECK(labeled.labels[0] == "a");
  CHECK(labeled.labels[1] == "b");
}

TEST_CASE("JSON space parsing") {
  auto X = parse_json_space(
      R"({"labels":["x","y"],"dist":[[0,1],[1,0]]})");
  CHECK(X.n() == 2);
  CHECK(X.labels[1] == "y");
  CHECK_THROWS_AS(parse_json_space(R"({"labels":["x","y"]})"), Error);
  CHECK_THROWS_AS(parse_json_space("{not json"), Error);
}

TEST_CASE("graph parsing and sniffing") {
  auto g = parse_graph("n 3\n0 1\n1 2\n");
  CHECK(g.n == 3);
  CHECK(g.edges.size() == 2);
  CHECK_THROWS_AS(parse_graph("3\n0 1\n"), Error);

  auto path = write_temp("graph.txt", "n 3\n0 1\n1 2\n");
  auto X = load_space(path);
  CHECK(X.dist(0, 2) == 2.0);  // sniffed as a graph, shortest-path metric

  auto csv = write_temp("space.csv", "0,1\n1,0\n");
  CHECK(load_space(csv).n() == 2);

  auto json = write_temp("space.json", R"({"dist":[[0,2],[2,0]]})");
  CHECK(load_space(json).dist(0, 1) == 2.0);

  CHECK_THROWS_AS(load_space("/nonexistent/file"), Error);
  try {
    load_space("/nonexistent/file");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::FileNotFound);
  }
}

TEST_CASE("certificate matrices load from bare CSV, arrays, and objects") {
  auto csv = write_temp("q.csv", "1,-1\n-1,1\n");
  auto m1 = load_matrix(csv);
  CHECK(m1(0, 1) == -1.0);

  auto arr = write_temp("q_arr.json", "[[1,-1],[-1,1]]");
  CHECK(load_matrix(arr)(1, 0) == -1.0);

  auto obj = write_temp("q_obj.json", R"({"Q":[[1,-1],[-1,1]]})");
  CHECK(load_matrix(obj)(1, 1) == 1.0);

  auto bad = write_temp("q_bad.json", "[[1,2],[3]]");
  CHECK_THROWS_AS(load_matrix(bad), Error);
}

TEST_CASE("JSON writer emits deterministic 12-digit output") {
  CHECK(JsonWriter::format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(JsonWriter::format_double(2.0) == "2");
  CHECK(JsonWriter::format_double(-1.5e-7) == "-1.5e-07");

  JsonWriter w;
  w.begin_object();
  w.key("a");
  w.value(1);
  w.key("b");
  w.begin_array();
  w.value(true);
  w.value(std::string("s"));
  w.end_array();
  w.end_object();
  CHECK(w.take() == R"({"a":1,"b":[true,"s"]})");

  JsonWriter m;
  Eigen::MatrixXd q(2, 2);
  q << 0, 0.5, 0.5, 0;
  m.matrix(q);
  CHECK(m.take() == "[[0,0.5],[0.5,0]]");
}

TEST_CASE("symmetry repair accepts tiny asymmetry and averages it away") {
  Eigen::MatrixXd d(2, 2);
  d << 0, 1.0 + 1e-12, 1.0, 0;
  auto X = validate_semimetric(d);
  CHECK(X.dist(0, 1) == X.dist(1, 0));
}
