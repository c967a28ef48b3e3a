#include "rcg/json_io.hpp"

#include <json.hpp>

#include <set>

namespace rcg
{

namespace
{

using json = nlohmann::json;
using ordered = nlohmann::ordered_json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const char* what)
{
    if (!obj.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
    for (const auto& [key, value] : obj.items())
    {
        (void)value;
        if (!allowed.count(key))
            throw ParseError("unknown key '" + key + "' in " + what);
    }
}

const json& require(const json& obj, const char* key, const char* what)
{
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(std::string("missing key '") + key + "' in " + what);
    return *it;
}

double number(const json& j, const char* what)
{
    if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
    return j.get<double>();
}

Vector vector_from(const json& j, const char* what)
{
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    Vector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = number(j[i], what);
    return v;
}

// Row-major matrix. An empty array yields 0 x cols_if_empty.
Matrix matrix_from(const json& j, const char* what, Index cols_if_empty)
{
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of rows");
    if (j.empty()) return Matrix(0, cols_if_empty);
    const Index rows = static_cast<Index>(j.size());
    if (!j[0].is_array()) throw ParseError(std::string(what) + " rows must be arrays");
    const Index cols = static_cast<Index>(j[0].size());
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; ++r)
    {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array()) throw ParseError(std::string(what) + " rows must be arrays");
        if (static_cast<Index>(row.size()) != cols)
            throw ShapeError(std::string(what) + " has ragged rows");
        for (Index c = 0; c < cols; ++c) m(r, c) = number(row[static_cast<std::size_t>(c)], what);
    }
    return m;
}

Norm norm_from(const json& j)
{
    if (j.is_string()) return norm_from_string(j.get<std::string>());
    if (j.is_number_integer())
    {
        const auto v = j.get<long long>();
        if (v == 1) return Norm::L1;
        if (v == 2) return Norm::L2;
        throw NormError("norm selector " + std::to_string(v) + " is not one of 1, 2, inf");
    }
    if (j.is_number()) throw NormError("norm selector " + j.dump() + " is not one of 1, 2, inf");
    throw ParseError("norm selector must be a string");
}

NormGroup group_from(const json& j)
{
    check_keys(j, {"idx", "p", "r"}, "group");
    NormGroup g;
    const json& idx = require(j, "idx", "group");
    if (!idx.is_array()) throw ParseError("group idx must be an array");
    for (const json& i : idx)
    {
        if (!i.is_number_integer()) throw ParseError("group idx entries must be integers");
        g.indices.push_back(static_cast<Index>(i.get<long long>()) - 1);
    }
    g.p = norm_from(require(j, "p", "group"));
    auto r = j.find("r");
    g.radius = (r == j.end()) ? 1.0 : number(*r, "group r");
    return g;
}

Ccg ccg_from(const json& j)
{
    check_keys(j, {"kind", "c", "G", "groups", "A", "b"}, "ccg");
    if (auto k = j.find("kind"); k != j.end() && *k != "ccg")
        throw ParseError("expected kind 'ccg'");
    Ccg s;
    s.c = vector_from(require(j, "c", "ccg"), "c");
    const json& G = require(j, "G", "ccg");
    // G is n rows of m entries; with n rows of zero entries m = 0
    s.G = matrix_from(G, "G", 0);
    if (G.empty() && s.c.size() > 0) throw ShapeError("G must have one row per entry of c");
    const json& groups = require(j, "groups", "ccg");
    if (!groups.is_array()) throw ParseError("groups must be an array");
    for (const json& g : groups) s.groups.push_back(group_from(g));
    s.A = matrix_from(require(j, "A", "ccg"), "A", s.G.cols());
    s.b = vector_from(require(j, "b", "ccg"), "b");
    return validate_ccg(std::move(s));
}

Rcg rcg_from(const json& j)
{
    check_keys(j, {"kind", "outer", "inner"}, "rcg");
    Rcg s;
    s.outer = ccg_from(require(j, "outer", "rcg"));
    s.inner = ccg_from(require(j, "inner", "rcg"));
    return validate_rcg(std::move(s));
}

Halfspace halfspace_from(const json& j)
{
    check_keys(j, {"kind", "h", "f"}, "halfspace");
    Halfspace hs;
    hs.h = vector_from(require(j, "h", "halfspace"), "h");
    hs.f = number(require(j, "f", "halfspace"), "f");
    return validate_halfspace(std::move(hs));
}

json parse_document(std::string_view text)
{
    try
    {
        return json::parse(text.begin(), text.end());
    }
    catch (const json::exception& e)
    {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

template <typename F>
auto guarded(F&& f)
{
    try
    {
        return f();
    }
    catch (const json::exception& e)
    {
        throw ParseError(e.what());
    }
}

ordered vector_to(const Vector& v)
{
    ordered a = ordered::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

ordered matrix_to(const Matrix& m)
{
    ordered a = ordered::array();
    for (Index r = 0; r < m.rows(); ++r)
    {
        ordered row = ordered::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        a.push_back(std::move(row));
    }
    return a;
}

ordered ccg_to(const Ccg& s)
{
    ordered j;
    j["kind"] = "ccg";
    j["c"] = vector_to(s.c);
    j["G"] = matrix_to(s.G);
    ordered groups = ordered::array();
    for (const NormGroup& g : s.groups)
    {
        ordered gj;
        ordered idx = ordered::array();
        for (Index i : g.indices) idx.push_back(static_cast<long long>(i) + 1);
        gj["idx"] = std::move(idx);
        gj["p"] = to_string(g.p);
        gj["r"] = g.radius;
        groups.push_back(std::move(gj));
    }
    j["groups"] = std::move(groups);
    j["A"] = matrix_to(s.A);
    j["b"] = vector_to(s.b);
    return j;
}

} // namespace

SetValue parse_set_json(std::string_view text)
{
    const json doc = parse_document(text);
    return guarded([&]() -> SetValue {
        if (!doc.is_object()) throw ParseError("set description must be a JSON object");
        const json& kind = require(doc, "kind", "set description");
        if (!kind.is_string()) throw ParseError("kind must be a string");
        const std::string k = kind.get<std::string>();
        if (k == "ccg") return ccg_from(doc);
        if (k == "rcg") return rcg_from(doc);
        if (k == "halfspace") return halfspace_from(doc);
        throw ParseError("unknown kind '" + k + "'");
    });
}

Ccg parse_ccg_json(std::string_view text)
{
    SetValue v = parse_set_json(text);
    if (auto* s = std::get_if<Ccg>(&v)) return std::move(*s);
    throw ParseError("expected a ccg, got " + kind_name(v));
}

Rcg parse_rcg_json(std::string_view text)
{
    SetValue v = parse_set_json(text);
    if (auto* s = std::get_if<Rcg>(&v)) return std::move(*s);
    throw ParseError("expected an rcg, got " + kind_name(v));
}

std::string emit_set_json(const SetValue& value, int indent)
{
    ordered j;
    if (const auto* s = std::get_if<Ccg>(&value))
    {
        j = ccg_to(*s);
    }
    else if (const auto* r = std::get_if<Rcg>(&value))
    {
        j["kind"] = "rcg";
        j["outer"] = ccg_to(r->outer);
        j["inner"] = ccg_to(r->inner);
    }
    else
    {
        const auto& hs = std::get<Halfspace>(value);
        j["kind"] = "halfspace";
        j["h"] = vector_to(hs.h);
        j["f"] = hs.f;
    }
    return j.dump(indent);
}

std::string kind_name(const SetValue& value)
{
    switch (value.index())
    {
        case 0: return "ccg";
        case 1: return "rcg";
        default: return "halfspace";
    }
}

} // namespace rcg
