#pragma once

#include "totpos/matrix.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace totpos {

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// {"rows": m, "cols": n, "scalar": "rational" | "float", "precision": p,
//  "data": ["1/2", ...]} with data row-major.  precision is optional and
// only meaningful for float files.
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);

// Headerless CSV, float entries at `bits`.
Matrix matrix_from_csv(std::string_view text, unsigned bits);
std::string matrix_to_csv(const Matrix& m);

// JSON when the first non-blank character is '{', CSV otherwise.
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::string& path);

} // namespace totpos
