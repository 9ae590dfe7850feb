#ifndef DBR_IO_HPP
#define DBR_IO_HPP

// JSON and CSV serialization of symbols, series, matrices and boundary grids.
// Complex numbers are [re, im] pairs; a bare number is read as a real value.

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "dbr/toeplitz.hpp"

namespace dbr::io {

using json = nlohmann::json;

inline Error invalid(const std::string& what) { return Error(ErrorKind::InvalidInput, what); }

inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw invalid("complex number must be [re, im] or a number, got " + j.dump());
}

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline std::vector<cplx> complex_list(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_array()) throw invalid(std::string("missing array field '") + field + "'");
  std::vector<cplx> out;
  for (const auto& v : j[field]) out.push_back(complex_from_json(v));
  return out;
}

inline json complex_list_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v(i)));
  return a;
}

inline json series_to_json(const HardySeries& h) { return complex_list_to_json(h.c); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw invalid(std::string("malformed JSON: ") + e.what());
  }
}

// Boundary CSV: header j,re,im, rows j = 0..M-1 in order.
inline BoundaryGrid read_grid_csv_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw invalid("empty grid CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "j,re,im") throw invalid("grid CSV header must be 'j,re,im'");
  std::vector<cplx> vals;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string sj, sr, si;
    if (!std::getline(row, sj, ',') || !std::getline(row, sr, ',') || !std::getline(row, si))
      throw invalid("grid CSV row must have three fields: " + line);
    try {
      if (std::stol(sj) != static_cast<long>(vals.size())) throw invalid("grid CSV rows out of order at " + sj);
      vals.emplace_back(std::stod(sr), std::stod(si));
    } catch (const std::logic_error&) {
      throw invalid("grid CSV row is not numeric: " + line);
    }
  }
  BoundaryGrid g{Vec(static_cast<Eigen::Index>(vals.size())), false};
  for (size_t i = 0; i < vals.size(); ++i) g.samples(static_cast<Eigen::Index>(i)) = vals[i];
  return g;
}

inline BoundaryGrid read_grid_csv(const std::string& path) { return read_grid_csv_text(read_file(path)); }

inline std::string grid_csv_text(const BoundaryGrid& g) {
  std::ostringstream out;
  out.precision(17);
  out << "j,re,im\n";
  for (int j = 0; j < g.size(); ++j) out << j << ',' << g.samples(j).real() << ',' << g.samples(j).imag() << '\n';
  return out.str();
}

inline void write_grid_csv(const std::string& path, const BoundaryGrid& g) {
  std::ofstream out(path);
  if (!out) throw invalid("cannot write " + path);
  out << grid_csv_text(g);
}

// {"type": "poly"|"rational"|"blaschke"|"constant"|"grid", ...}; relative csv paths
// resolve against base_dir.
inline SymbolSpec symbol_from_json(const json& j, const std::string& base_dir = "") {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) throw invalid("symbol needs a string 'type'");
  const std::string type = j["type"].get<std::string>();
  SymbolSpec s;
  if (type == "poly") {
    s = Polynomial{complex_list(j, "coeffs")};
  } else if (type == "rational") {
    s = Rational{complex_list(j, "num"), complex_list(j, "den")};
  } else if (type == "blaschke") {
    Blaschke bl{complex_list(j, "zeros"), cplx(1.0)};
    if (j.contains("factor")) bl.factor = complex_from_json(j["factor"]);
    s = bl;
  } else if (type == "constant") {
    if (!j.contains("value")) throw invalid("constant symbol needs 'value'");
    s = Constant{complex_from_json(j["value"])};
  } else if (type == "grid") {
    if (j.contains("samples")) {
      const auto v = complex_list(j, "samples");
      BoundaryGrid g{Vec(static_cast<Eigen::Index>(v.size())), false};
      for (size_t i = 0; i < v.size(); ++i) g.samples(static_cast<Eigen::Index>(i)) = v[i];
      s = Grid{g};
    } else if (j.contains("csv") && j["csv"].is_string()) {
      std::string path = j["csv"].get<std::string>();
      if (!path.empty() && path[0] != '/' && !base_dir.empty()) path = base_dir + "/" + path;
      s = Grid{read_grid_csv(path)};
    } else {
      throw invalid("grid symbol needs 'samples' or 'csv'");
    }
  } else {
    throw invalid("unknown symbol type '" + type + "'");
  }
  validate(s);
  return s;
}

inline json symbol_to_json(const SymbolSpec& s) {
  auto list = [](const std::vector<cplx>& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(complex_to_json(z));
    return a;
  };
  return std::visit(
      [&](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Polynomial>) return {{"type", "poly"}, {"coeffs", list(x.coeffs)}};
        else if constexpr (std::is_same_v<T, Rational>) return {{"type", "rational"}, {"num", list(x.num)}, {"den", list(x.den)}};
        else if constexpr (std::is_same_v<T, Blaschke>)
          return {{"type", "blaschke"}, {"zeros", list(x.zeros)}, {"factor", complex_to_json(x.factor)}};
        else if constexpr (std::is_same_v<T, Constant>) return {{"type", "constant"}, {"value", complex_to_json(x.value)}};
        else return {{"type", "grid"}, {"samples", complex_list_to_json(x.grid.samples)}};
      },
      s);
}

// {"rows": r, "cols": c, "data": [[re, im], ...]} row-major.
inline Mat matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw invalid("matrix needs 'rows', 'cols' and 'data'");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) throw invalid("matrix dimensions must be integers");
  const long r = j["rows"].get<long>(), c = j["cols"].get<long>();
  if (r <= 0 || c <= 0) throw invalid("matrix dimensions must be positive");
  const auto v = complex_list(j, "data");
  if (static_cast<long>(v.size()) != r * c) throw invalid("matrix data length differs from rows*cols");
  Mat m(r, c);
  for (long i = 0; i < r; ++i)
    for (long k = 0; k < c; ++k) m(i, k) = v[static_cast<size_t>(i * c + k)];
  return m;
}

inline json matrix_to_json(const Mat& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) data.push_back(complex_to_json(m(i, k)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

}  // namespace dbr::io

#endif  // DBR_IO_HPP