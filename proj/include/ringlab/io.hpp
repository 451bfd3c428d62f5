#pragma once

// Ring-spec files, element expressions and the JSON building blocks of reports.
//
// Ring spec, strict (unknown keys rejected):
//   {"preset": "M(3,2)"}
//   {"explicit": {"p": 2, "dim": 2, "one": [1,0], "mul": [[[1,0],[0,1]],[[0,1],[1,0]]],
//                 "labels": ["1","g"], "named": {"t": [1,1]}}}
// mul[i][j] holds the coordinates of b_i * b_j; labels and named are optional.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ringlab/algebra.hpp"
#include "ringlab/exactla.hpp"

namespace ringlab::io {

using Json = nlohmann::json;

struct RingSpec {
    std::optional<std::string> preset;
    std::optional<AlgebraTable> table;

    FiniteAlgebra build() const;
    Json to_json() const;
    std::string describe() const;  // preset name, or "explicit"
};

// Syntax errors carry line and column.
RingSpec parse_ring_spec(std::string_view text);
RingSpec ring_spec_from_json(const Json& j);
// A preset name, or inline JSON when the argument starts with '{'.
RingSpec ring_spec_from_argument(std::string_view arg);
RingSpec load_ring_file(const std::string& path);

// Parses text as JSON, reporting syntax errors with line and column.
Json parse_json(std::string_view text, std::string_view what);
Json load_json_file(const std::string& path);

// Sums of optionally scaled atoms: "e12+e23", "2*e12", "J", "J^2", "1+g", "p1.e12-p2.e11", "0",
// or a coordinate vector "[0,1,0,0]". Atoms are basis labels, named elements or integers.
Element parse_element(const FiniteAlgebra& r, std::string_view expr);

Json rows_json(const la::Mat& m);
Json subspace_json(const la::Subspace& s);
Json vec_json(const Vec& v);
Json element_json(const Element& e);

// Integer rows of the given width with entries in [0, p).
la::Mat mat_from_json(const Json& j, const la::PrimeField& f, std::size_t cols);
Vec vec_from_json(const Json& j, const la::PrimeField& f, std::size_t len);

}  // namespace ringlab::io
