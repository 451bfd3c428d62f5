#include "ringlab/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "ringlab/error.hpp"

namespace ringlab::io {

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

void only_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) parse_fail(where + ": expected an object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) parse_fail(where + ": unknown key '" + key + "'");
}

const Json& required(const Json& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) parse_fail(where + ": missing key '" + key + "'");
    return *it;
}

std::int64_t integer(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) parse_fail(where + ": expected an integer");
    return j.get<std::int64_t>();
}

// Entries must be residues in [0, p).
std::vector<std::int64_t> int_list(const Json& j, std::size_t len, std::int64_t p, const std::string& where) {
    if (!j.is_array()) parse_fail(where + ": expected an array");
    if (j.size() != len)
        parse_fail(where + ": expected " + std::to_string(len) + " entries, got " + std::to_string(j.size()));
    std::vector<std::int64_t> out;
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        const auto w = where + "[" + std::to_string(i) + "]";
        const auto v = integer(j[i], w);
        if (v < 0 || v >= p) parse_fail(w + ": entry " + std::to_string(v) + " is not in [0, " + std::to_string(p) + ")");
        out.push_back(v);
    }
    return out;
}

AlgebraTable table_from_json(const Json& j) {
    const std::string w = "explicit";
    only_keys(j, {"p", "dim", "one", "mul", "labels", "named"}, w);
    AlgebraTable t;
    const auto p = integer(required(j, "p", w), w + ".p");
    const auto d = integer(required(j, "dim", w), w + ".dim");
    if (p < 2 || p > static_cast<std::int64_t>(la::PrimeField::max_modulus) || !la::is_prime(static_cast<std::uint32_t>(p)))
        throw Error(ErrorCode::NonPrimeModulus, w + ".p = " + std::to_string(p) + " is not a prime <= 251");
    if (d < 0 || d > 64) throw Error(ErrorCode::OutOfRange, w + ".dim must lie in 0..64");
    t.p = static_cast<std::uint32_t>(p);
    t.dim = static_cast<std::size_t>(d);
    t.one = int_list(required(j, "one", w), t.dim, p, w + ".one");

    const auto& mul = required(j, "mul", w);
    if (!mul.is_array() || mul.size() != t.dim) parse_fail(w + ".mul: expected " + std::to_string(t.dim) + " rows");
    t.mul.reserve(t.dim * t.dim * t.dim);
    for (std::size_t i = 0; i < t.dim; ++i) {
        const std::string wi = w + ".mul[" + std::to_string(i) + "]";
        if (!mul[i].is_array() || mul[i].size() != t.dim) parse_fail(wi + ": expected " + std::to_string(t.dim) + " products");
        for (std::size_t k = 0; k < t.dim; ++k) {
            const auto v = int_list(mul[i][k], t.dim, p, wi + "[" + std::to_string(k) + "]");
            t.mul.insert(t.mul.end(), v.begin(), v.end());
        }
    }
    if (auto it = j.find("labels"); it != j.end()) {
        if (!it->is_array() || it->size() != t.dim) parse_fail(w + ".labels: expected " + std::to_string(t.dim) + " strings");
        std::set<std::string> seen;
        for (const auto& l : *it) {
            if (!l.is_string() || l.get<std::string>().empty()) parse_fail(w + ".labels: expected non-empty strings");
            if (!seen.insert(l.get<std::string>()).second) parse_fail(w + ".labels: duplicate label " + l.dump());
            t.labels.push_back(l.get<std::string>());
        }
    }
    if (auto it = j.find("named"); it != j.end()) {
        if (!it->is_object()) parse_fail(w + ".named: expected an object");
        for (const auto& [name, coords] : it->items()) t.named[name] = int_list(coords, t.dim, p, w + ".named." + name);
    }
    return t;
}

Json table_to_json(const AlgebraTable& t) {
    Json mul = Json::array();
    for (std::size_t i = 0; i < t.dim; ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < t.dim; ++k) {
            const auto first = t.mul.begin() + static_cast<std::ptrdiff_t>((i * t.dim + k) * t.dim);
            row.push_back(std::vector<std::int64_t>(first, first + static_cast<std::ptrdiff_t>(t.dim)));
        }
        mul.push_back(std::move(row));
    }
    Json out{{"p", t.p}, {"dim", t.dim}, {"one", t.one}, {"mul", std::move(mul)}};
    if (!t.labels.empty()) out["labels"] = t.labels;
    if (!t.named.empty()) out["named"] = t.named;
    return out;
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) parse_fail("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class ElementParser {
public:
    ElementParser(const FiniteAlgebra& r, std::string_view text) : r_(r), text_(text) {}

    Element parse() {
        skip();
        if (pos_ == text_.size()) fail("empty expression");
        if (peek() == '[') return vector_literal();
        Element acc = r_.zero();
        bool first = true;
        while (true) {
            skip();
            bool negate = false;
            if (peek() == '+' || peek() == '-') {
                negate = get() == '-';
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            Element t = term();
            acc = negate ? acc - t : acc + t;
            first = false;
            skip();
            if (pos_ == text_.size()) return acc;
        }
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() { return text_[pos_++]; }
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        parse_fail("element '" + std::string(text_) + "' at column " + std::to_string(pos_ + 1) + ": " + msg);
    }

    static bool atom_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '^';
    }

    std::string atom_text() {
        skip();
        const auto start = pos_;
        while (pos_ < text_.size() && atom_char(text_[pos_])) ++pos_;
        if (start == pos_) fail("expected a label, name or integer");
        return std::string(text_.substr(start, pos_ - start));
    }

    static bool all_digits(const std::string& s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    }

    Residue scalar(const std::string& s) const {
        if (s.size() > 12) fail("integer too long");
        return r_.field().reduce(std::stoll(s));
    }

    std::optional<Element> lookup(const std::string& s) const {
        const auto& labels = r_.labels();
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == s) return r_.basis(i);
        if (auto e = r_.named(s)) return e;
        if (all_digits(s)) return scalar(s) * r_.one();
        return std::nullopt;
    }

    Element atom() {
        const auto s = atom_text();
        if (auto e = lookup(s)) return *e;
        if (const auto caret = s.rfind('^'); caret != std::string::npos && caret > 0) {
            const auto exp = s.substr(caret + 1);
            if (all_digits(exp) && exp.size() <= 9) {
                if (auto base = lookup(s.substr(0, caret))) return base->pow(std::stoull(exp));
            }
        }
        fail("unknown symbol '" + s + "'");
    }

    Element term() {
        skip();
        const auto save = pos_;
        std::string lead;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) lead += text_[pos_++];
        skip();
        if (!lead.empty() && peek() == '*') {
            ++pos_;
            return scalar(lead) * atom();
        }
        pos_ = save;
        return atom();
    }

    Element vector_literal() {
        const auto close = text_.find(']');
        if (close == std::string_view::npos || text_.find_first_not_of(" \t\r\n", close + 1) != std::string_view::npos)
            fail("malformed coordinate vector");
        Json j;
        try {
            j = Json::parse(text_.substr(pos_, close + 1 - pos_));
        } catch (const Json::parse_error&) {
            fail("malformed coordinate vector");
        }
        if (!j.is_array() || j.size() != r_.dim()) fail("expected " + std::to_string(r_.dim()) + " coordinates");
        Vec v;
        for (const auto& x : j) {
            if (!x.is_number_integer()) fail("coordinates must be integers");
            const auto c = x.get<std::int64_t>();
            if (c < 0 || c >= static_cast<std::int64_t>(r_.field().modulus()))
                fail("coordinates must lie in [0, " + std::to_string(r_.field().modulus()) + ")");
            v.push_back(static_cast<Residue>(c));
        }
        return r_.element(std::move(v));
    }

    const FiniteAlgebra& r_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

FiniteAlgebra RingSpec::build() const {
    if (preset) return catalog(*preset);
    if (table) return FiniteAlgebra::build(*table);
    parse_fail("empty ring spec");
}

Json RingSpec::to_json() const {
    if (preset) return Json{{"preset", *preset}};
    if (table) return Json{{"explicit", table_to_json(*table)}};
    return Json::object();
}

std::string RingSpec::describe() const { return preset ? *preset : std::string("explicit"); }

Json parse_json(std::string_view text, std::string_view what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte);
        std::string msg = e.what();
        if (const auto cut = msg.find("syntax error"); cut != std::string::npos) msg = msg.substr(cut);
        parse_fail(std::string(what) + ": line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
    }
}

Json load_json_file(const std::string& path) { return parse_json(read_file(path), path); }

RingSpec ring_spec_from_json(const Json& j) {
    only_keys(j, {"preset", "explicit"}, "ring spec");
    const bool has_preset = j.contains("preset"), has_explicit = j.contains("explicit");
    if (has_preset == has_explicit) parse_fail("ring spec: exactly one of 'preset' or 'explicit' is required");
    RingSpec spec;
    if (has_preset) {
        if (!j["preset"].is_string()) parse_fail("ring spec: 'preset' must be a string");
        spec.preset = j["preset"].get<std::string>();
    } else {
        spec.table = table_from_json(j["explicit"]);
    }
    return spec;
}

RingSpec parse_ring_spec(std::string_view text) { return ring_spec_from_json(parse_json(text, "ring spec")); }

RingSpec ring_spec_from_argument(std::string_view arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && arg[first] == '{') return parse_ring_spec(arg);
    RingSpec spec;
    spec.preset = std::string(arg);
    return spec;
}

RingSpec load_ring_file(const std::string& path) { return ring_spec_from_json(load_json_file(path)); }

Element parse_element(const FiniteAlgebra& r, std::string_view expr) { return ElementParser(r, expr).parse(); }

Json rows_json(const la::Mat& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vec_json(m.row_vec(i)));
    return out;
}

Json subspace_json(const la::Subspace& s) { return rows_json(s.basis()); }

Json vec_json(const Vec& v) {
    Json out = Json::array();
    for (auto x : v) out.push_back(static_cast<int>(x));
    return out;
}

Json element_json(const Element& e) { return Json{{"coords", vec_json(e.coords())}, {"text", to_string(e)}}; }

Vec vec_from_json(const Json& j, const la::PrimeField& f, std::size_t len) {
    if (!j.is_array() || j.size() != len) parse_fail("expected a vector of length " + std::to_string(len));
    Vec v;
    v.reserve(len);
    for (const auto& x : j) {
        if (!x.is_number_integer()) parse_fail("vector entries must be integers");
        const auto value = x.get<std::int64_t>();
        if (value < 0 || value >= static_cast<std::int64_t>(f.modulus())) parse_fail("entry out of range [0, p)");
        v.push_back(static_cast<Residue>(value));
    }
    return v;
}

la::Mat mat_from_json(const Json& j, const la::PrimeField& f, std::size_t cols) {
    if (!j.is_array()) parse_fail("expected a list of rows");
    la::Mat m(f, 0, cols);
    for (const auto& row : j) m.append_row(vec_from_json(row, f, cols));
    return m;
}

}  // namespace ringlab::io
