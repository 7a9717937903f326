#include "hrrank/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hrrank/errors.hpp"

namespace hrr {

using nlohmann::json;

namespace {

constexpr const char* kOrder = "slice-major";

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into a line number for the message.
        std::size_t line = 1;
        for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i)
            if (text[i] == '\n') ++line;
        throw ParseError("line " + std::to_string(line) + ": " + e.what());
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

const json& field(const json& obj, const char* name, const std::string& context) {
    if (!obj.is_object()) throw ParseError(context + ": expected a JSON object");
    const auto it = obj.find(name);
    if (it == obj.end()) throw ParseError(context + ": missing field '" + name + "'");
    return *it;
}

Shape3 read_dims(const json& obj, const std::string& context) {
    const json& dims = field(obj, "dims", context);
    if (!dims.is_array() || dims.size() != 3) throw ParseError(context + ": field 'dims' must be an array of 3 integers");
    Shape3 s{};
    for (std::size_t i = 0; i < 3; ++i) {
        if (!dims[i].is_number_unsigned() || dims[i].get<std::uint64_t>() == 0) {
            throw ParseError(context + ": field 'dims[" + std::to_string(i) + "]' must be a positive integer");
        }
        s[i] = dims[i].get<std::size_t>();
    }
    return s;
}

std::vector<double> read_numbers(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw ParseError("field '" + where + "' must be an array of numbers");
    std::vector<double> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) throw ParseError("field '" + where + "[" + std::to_string(i) + "]' is not a number");
        const double x = arr[i].get<double>();
        if (!std::isfinite(x)) throw ValidationError("field '" + where + "[" + std::to_string(i) + "]' is not finite");
        out.push_back(x);
    }
    return out;
}

json dims_json(const Shape3& s) { return json::array({s[0], s[1], s[2]}); }

}  // namespace

Tensor3 tensor_from_json(const std::string& text) {
    const json doc = parse(text);
    const Shape3 dims = read_dims(doc, "tensor");
    const json& order = field(doc, "order", "tensor");
    if (!order.is_string() || order.get<std::string>() != kOrder) {
        throw ValidationError("tensor: field 'order' must be \"slice-major\"");
    }
    std::vector<double> data = read_numbers(field(doc, "data", "tensor"), "data");
    const std::size_t expected = dims[0] * dims[1] * dims[2];
    if (data.size() != expected) {
        throw ValidationError("tensor: field 'data' has " + std::to_string(data.size()) + " entries, dims require " +
                              std::to_string(expected));
    }
    return Tensor3(dims, std::move(data));
}

std::string tensor_to_json(const Tensor3& t) {
    json doc;
    doc["dims"] = dims_json(t.shape());
    doc["order"] = kOrder;
    doc["data"] = std::vector<double>(t.data().begin(), t.data().end());
    return doc.dump() + "\n";
}

Decomposition decomposition_from_json(const std::string& text) {
    const json doc = parse(text);
    Decomposition d;
    d.shape = read_dims(doc, "decomposition");
    const json& terms = field(doc, "terms", "decomposition");
    if (!terms.is_array()) throw ParseError("decomposition: field 'terms' must be an array");
    d.terms.reserve(terms.size());
    for (std::size_t r = 0; r < terms.size(); ++r) {
        const std::string ctx = "terms[" + std::to_string(r) + "]";
        RankOneTerm term{read_numbers(field(terms[r], "u", ctx), ctx + ".u"),
                         read_numbers(field(terms[r], "v", ctx), ctx + ".v"),
                         read_numbers(field(terms[r], "w", ctx), ctx + ".w")};
        if (term.u.size() != d.shape[0] || term.v.size() != d.shape[1] || term.w.size() != d.shape[2]) {
            throw ValidationError("decomposition: " + ctx + " vector lengths do not match dims");
        }
        d.terms.push_back(std::move(term));
    }
    return d;
}

std::string decomposition_to_json(const Decomposition& d) {
    d.validate();
    json doc;
    doc["dims"] = dims_json(d.shape);
    json terms = json::array();
    for (const RankOneTerm& t : d.terms) terms.push_back({{"u", t.u}, {"v", t.v}, {"w", t.w}});
    doc["terms"] = std::move(terms);
    return doc.dump() + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw Error("failed writing '" + path + "'");
}

Tensor3 load_tensor(const std::string& path) { return tensor_from_json(read_text_file(path)); }
void save_tensor(const std::string& path, const Tensor3& t) { write_text_file(path, tensor_to_json(t)); }
Decomposition load_decomposition(const std::string& path) { return decomposition_from_json(read_text_file(path)); }
void save_decomposition(const std::string& path, const Decomposition& d) {
    write_text_file(path, decomposition_to_json(d));
}

}  // namespace hrr
