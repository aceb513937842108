#include "stieltjescf/json_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "stieltjescf/errors.hpp"

namespace stieltjescf {

using nlohmann::json;

namespace {

Complex complex_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw UsageError(path + ": expected a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

double number_from_json(const json& j, const std::string& path) {
  if (!j.is_number()) throw UsageError(path + ": expected a number");
  return j.get<double>();
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw UsageError(path + ": expected a nonempty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  Matrix m;
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.empty()) throw UsageError(row_path + ": expected an array");
    if (r == 0) {
      cols = row.size();
      m = Matrix(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    } else if (row.size() != cols) {
      throw UsageError(row_path + ": ragged matrix rows");
    }
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(row[c], row_path + "[" + std::to_string(c) + "]");
  }
  return m;
}

json to_json(const PoleResidueForm& f) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["n"] = f.dim();
  doc["A"] = matrix_to_json(f.linear_term());
  doc["B"] = matrix_to_json(f.constant_term());
  json poles = json::array();
  for (const auto& p : f.poles())
    poles.push_back(json{{"lambda", p.lambda}, {"C", matrix_to_json(p.residue)}});
  doc["poles"] = std::move(poles);
  return doc;
}

PoleResidueForm form_from_json(const json& j) {
  if (!j.is_object()) throw UsageError("$: expected an object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw UsageError("$.n: expected an integer dimension");
  const auto n = j["n"].get<Eigen::Index>();
  if (n <= 0) throw UsageError("$.n: dimension must be positive");
  for (const char* key : {"A", "B"})
    if (!j.contains(key)) throw UsageError(std::string("$.") + key + ": missing matrix");
  Matrix a = matrix_from_json(j["A"], "$.A");
  Matrix b = matrix_from_json(j["B"], "$.B");
  if (a.rows() != n || a.cols() != n) throw UsageError("$.A: dimension does not match n");
  if (b.rows() != n || b.cols() != n) throw UsageError("$.B: dimension does not match n");
  std::vector<Pole> poles;
  if (j.contains("poles")) {
    if (!j["poles"].is_array()) throw UsageError("$.poles: expected an array");
    for (std::size_t k = 0; k < j["poles"].size(); ++k) {
      const json& entry = j["poles"][k];
      const std::string path = "$.poles[" + std::to_string(k) + "]";
      if (!entry.is_object() || !entry.contains("lambda") || !entry.contains("C"))
        throw UsageError(path + ": expected {lambda, C}");
      const double lambda = number_from_json(entry["lambda"], path + ".lambda");
      Matrix c = matrix_from_json(entry["C"], path + ".C");
      if (c.rows() != n || c.cols() != n)
        throw UsageError(path + ".C: dimension does not match n");
      if (!(lambda > 0.0)) throw UsageError(path + ".lambda: must be positive");
      poles.push_back({lambda, std::move(c)});
    }
  }
  try {
    return PoleResidueForm(std::move(a), std::move(b), std::move(poles));
  } catch (const InvalidForm& e) {
    throw UsageError(std::string("$: ") + e.what());
  }
}

json to_json(const JFraction& jf) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["layout"] = jf.layout == JLayout::primal ? "primal" : "classical";
  json levels = json::array();
  for (const auto& level : jf.levels)
    levels.push_back(
        json{{"A", matrix_to_json(level.constant)}, {"B", matrix_to_json(level.linear)}});
  doc["levels"] = std::move(levels);
  return doc;
}

JFraction jfraction_from_json(const json& j) {
  if (!j.is_object() || !j.contains("levels") || !j["levels"].is_array())
    throw UsageError("$.levels: expected an array");
  JFraction jf;
  if (j.contains("layout")) {
    const std::string layout = j["layout"].get<std::string>();
    if (layout == "primal")
      jf.layout = JLayout::primal;
    else if (layout == "classical")
      jf.layout = JLayout::classical;
    else
      throw UsageError("$.layout: expected primal or classical");
  }
  for (std::size_t k = 0; k < j["levels"].size(); ++k) {
    const json& entry = j["levels"][k];
    const std::string path = "$.levels[" + std::to_string(k) + "]";
    if (!entry.is_object() || !entry.contains("A") || !entry.contains("B"))
      throw UsageError(path + ": expected {A, B}");
    jf.levels.push_back({matrix_from_json(entry["A"], path + ".A"),
                         matrix_from_json(entry["B"], path + ".B")});
  }
  return jf;
}

json to_json(const SFraction& s) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["coefficients"] = s.coefficients;
  if (s.has_head) {
    doc["head"] = json{{"linear", s.head_linear}, {"constant", s.head_constant}};
  }
  return doc;
}

PoleResidueForm load_function_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
  return form_from_json(doc);
}

void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string digest(const json& j) {
  const std::string dump = j.dump();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << hash;
  return out.str();
}

}  // namespace stieltjescf
