#pragma once

#include <string>

#include "json.hpp"
#include "stieltjescf/forms.hpp"
#include "stieltjescf/reduction.hpp"
#include "stieltjescf/sfraction.hpp"

namespace stieltjescf {

inline constexpr const char* kSchemaVersion = "1";

// Complex entries are encoded as two-element arrays [re, im]; matrices as
// row-major nested arrays.  Serialization round-trips bit-exactly (shortest
// round-trip decimal representation on write, exact parse on read).
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const std::string& path);

// FunctionDocument: {schema_version, n, A, B, poles: [{lambda, C}, ...]}.
// Parse failures throw UsageError with the path to the offending field.
nlohmann::json to_json(const PoleResidueForm& f);
PoleResidueForm form_from_json(const nlohmann::json& j);

nlohmann::json to_json(const JFraction& jf);
JFraction jfraction_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SFraction& s);

PoleResidueForm load_function_document(const std::string& path);
void save_json(const nlohmann::json& j, const std::string& path);

// FNV-1a over the canonical dump; used as the input digest in reports.
std::string digest(const nlohmann::json& j);

}  // namespace stieltjescf
