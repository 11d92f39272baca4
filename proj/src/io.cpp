#include "negtype/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace negtype {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& tok : out) {
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front())))
      tok.erase(tok.begin());
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back())))
      tok.pop_back();
  }
  return out;
}

bool parse_double(const std::string& s, double* out) {
  try {
    std::size_t pos = 0;
    *out = std::stod(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

std::vector<std::string> nonempty_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (!blank) lines.push_back(line);
  }
  return lines;
}

Eigen::MatrixXd parse_csv_matrix(const std::vector<std::string>& rows) {
  if (rows.empty()) throw Error(ErrKind::ParseError, "empty matrix");
  const auto ncols = split(rows[0], ',').size();
  Eigen::MatrixXd m(rows.size(), ncols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto toks = split(rows[i], ',');
    if (toks.size() != ncols)
      throw Error(ErrKind::ParseError, "ragged row in matrix");
    for (std::size_t j = 0; j < ncols; ++j) {
      double v;
      if (!parse_double(toks[j], &v))
        throw Error(ErrKind::ParseError, "bad number: " + toks[j]);
      m(i, j) = v;
    }
  }
  return m;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrKind::FileNotFound, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SemiMetricSpace parse_csv_space(const std::string& text) {
  auto lines = nonempty_lines(text);
  if (lines.empty()) throw Error(ErrKind::ParseError, "empty input");
  std::vector<std::string> labels;
  auto first = split(lines[0], ',');
  double ignored;
  if (!first.empty() && !parse_double(first[0], &ignored)) {
    labels = first;
    lines.erase(lines.begin());
  }
  return validate_semimetric(parse_csv_matrix(lines), std::move(labels));
}

SemiMetricSpace parse_json_space(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrKind::ParseError, std::string("bad JSON: ") + e.what());
  }
  if (!j.contains("dist"))
    throw Error(ErrKind::ParseError, "JSON space needs a \"dist\" field");
  auto rows = j["dist"];
  const auto n = rows.size();
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw Error(ErrKind::ParseError, "dist is not square");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = rows[i][k].get<double>();
  }
  std::vector<std::string> labels;
  if (j.contains("labels"))
    labels = j["labels"].get<std::vector<std::string>>();
  return validate_semimetric(m, std::move(labels));
}

GraphSpec parse_graph(const std::string& text) {
  auto lines = nonempty_lines(text);
  if (lines.empty()) throw Error(ErrKind::ParseError, "empty graph file");
  std::istringstream head(lines[0]);
  std::string tag;
  GraphSpec g;
  head >> tag >> g.n;
  if (tag != "n" || head.fail())
    throw Error(ErrKind::ParseError, "graph file must start with \"n <count>\"");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream edge(lines[i]);
    int a, b;
    edge >> a >> b;
    if (edge.fail())
      throw Error(ErrKind::ParseError, "bad edge line: " + lines[i]);
    g.edges.emplace_back(a, b);
  }
  return g;
}

SemiMetricSpace load_space(const std::string& path) {
  std::string text = read_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    throw Error(ErrKind::ParseError, "empty input file");
  if (text[first] == '{') return parse_json_space(text);
  if (text.compare(first, 2, "n ") == 0)
    return shortest_path_metric(parse_graph(text));
  return parse_csv_space(text);
}

Eigen::MatrixXd load_matrix(const std::string& path) {
  std::string text = read_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    throw Error(ErrKind::ParseError, "empty matrix file");
  if (text[first] == '[' || text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
      throw Error(ErrKind::ParseError, std::string("bad JSON: ") + e.what());
    }
    if (j.is_object() && j.contains("Q")) j = j["Q"];
    const auto n = j.size();
    if (n == 0) throw Error(ErrKind::ParseError, "empty matrix");
    Eigen::MatrixXd m(n, j[0].size());
    for (std::size_t i = 0; i < n; ++i) {
      if (j[i].size() != static_cast<std::size_t>(m.cols()))
        throw Error(ErrKind::ParseError, "ragged matrix");
      for (Eigen::Index k = 0; k < m.cols(); ++k) m(i, k) = j[i][k].get<double>();
    }
    return m;
  }
  return parse_csv_matrix(nonempty_lines(text));
}

std::string JsonWriter::format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void JsonWriter::comma() {
  if (!fresh_) out_ += ",";
}

void JsonWriter::begin_object() {
  comma();
  out_ += "{";
  fresh_ = true;
}

void JsonWriter::end_object() {
  out_ += "}";
  fresh_ = false;
}

void JsonWriter::begin_array() {
  comma();
  out_ += "[";
  fresh_ = true;
}

void JsonWriter::end_array() {
  out_ += "]";
  fresh_ = false;
}

void JsonWriter::key(const std::string& k) {
  comma();
  out_ += "\"" + k + "\":";
  fresh_ = true;
}

void JsonWriter::value(double v) {
  comma();
  out_ += format_double(v);
  fresh_ = false;
}

void JsonWriter::value(int v) {
  comma();
  out_ += std::to_string(v);
  fresh_ = false;
}

void JsonWriter::value(bool v) {
  comma();
  out_ += v ? "true" : "false";
  fresh_ = false;
}

void JsonWriter::value(const std::string& s) {
  comma();
  out_ += "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out_ += '\\';
    out_ += c;
  }
  out_ += "\"";
  fresh_ = false;
}

void JsonWriter::matrix(const Eigen::MatrixXd& m) {
  begin_array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    begin_array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) value(m(i, j));
    end_array();
  }
  end_array();
}

void JsonWriter::vector(const Eigen::VectorXd& v) {
  begin_array();
  for (Eigen::Index i = 0; i < v.size(); ++i) value(v(i));
  end_array();
}

}  // namespace negtype
