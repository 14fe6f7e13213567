#include "totpos/matrix_io.hpp"

#include <fstream>
#include <sstream>

namespace totpos {

namespace {

Scalar entry_from_json(const nlohmann::json& v, bool rational, unsigned bits) {
    std::string text;
    if (v.is_string()) text = v.get<std::string>();
    else if (v.is_number_integer()) text = std::to_string(v.get<long long>());
    else if (v.is_number()) text = v.dump();
    else throw FormatError("matrix entries must be strings or numbers");
    try {
        return rational ? Scalar::parse(text) : Scalar::parse_float(text, bits);
    } catch (const std::exception& e) {
        throw FormatError("bad matrix entry '" + text + "': " + e.what());
    }
}

} // namespace

Matrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw FormatError("matrix file must be a JSON object");
    for (const char* key : {"rows", "cols", "data"})
        if (!j.contains(key)) throw FormatError(std::string("matrix file lacks '") + key + "'");
    const auto& rows = j.at("rows");
    const auto& cols = j.at("cols");
    if (!rows.is_number_unsigned() || !cols.is_number_unsigned()) throw FormatError("rows and cols must be positive integers");
    const std::size_t m = rows.get<std::size_t>(), n = cols.get<std::size_t>();
    const std::string kind = j.value("scalar", std::string("rational"));
    if (kind != "rational" && kind != "float") throw FormatError("scalar must be \"rational\" or \"float\"");
    unsigned bits = default_precision();
    if (j.contains("precision")) {
        if (!j.at("precision").is_number_unsigned()) throw FormatError("precision must be a positive integer");
        bits = j.at("precision").get<unsigned>();
    }
    const auto& data = j.at("data");
    if (!data.is_array()) throw FormatError("data must be an array");
    if (m == 0 || n == 0 || data.size() != m * n)
        throw FormatError("data has " + std::to_string(data.size()) + " entries, expected rows*cols = " + std::to_string(m * n));
    std::vector<Scalar> e;
    e.reserve(m * n);
    for (const auto& v : data) e.push_back(entry_from_json(v, kind == "rational", bits));
    return Matrix(m, n, std::move(e));
}

nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["scalar"] = m.is_exact() ? "rational" : "float";
    if (!m.is_exact()) j["precision"] = m.precision();
    auto data = nlohmann::json::array();
    for (const auto& s : m.entries()) data.push_back(s.str());
    j["data"] = std::move(data);
    return j;
}

Matrix matrix_from_csv(std::string_view text, unsigned bits) {
    std::vector<std::vector<Scalar>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<Scalar> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            const auto b = cell.find_first_not_of(" \t\r");
            const auto e = cell.find_last_not_of(" \t\r");
            if (b == std::string::npos) throw FormatError("empty CSV cell");
            try {
                row.push_back(Scalar::parse_float(cell.substr(b, e - b + 1), bits));
            } catch (const std::exception& ex) {
                throw FormatError("bad CSV cell '" + cell + "': " + ex.what());
            }
        }
        if (!rows.empty() && row.size() != rows.front().size()) throw FormatError("ragged CSV rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw FormatError("empty CSV matrix");
    return Matrix::from_rows(rows);
}

std::string matrix_to_csv(const Matrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += m(i, j).str();
        }
        out += '\n';
    }
    return out;
}

Matrix read_matrix(std::istream& in) {
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw FormatError("empty matrix input");
    if (text[first] != '{') return matrix_from_csv(text, default_precision());
    try {
        return matrix_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
}

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_matrix(in);
}

} // namespace totpos
