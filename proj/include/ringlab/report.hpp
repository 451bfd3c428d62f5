#pragma once

// Machine-readable reports for every command. Each report carries the ring spec it was
// computed from, so `verify_report` can re-check its certificates with nothing else.

#include <optional>
#include <string>

#include "ringlab/error.hpp"
#include "ringlab/io.hpp"
#include "ringlab/theorems.hpp"

namespace ringlab::report {

using io::Json;

struct Context {
    io::RingSpec spec;
    FiniteAlgebra ring;
    std::optional<std::string> element_expr;
    unsigned jobs = 1;
};

Context make_context(io::RingSpec spec);

Json describe(const Context& ctx, const std::optional<Element>& a);
Json classify(const Context& ctx);
Json split(const Context& ctx, const Element& a);
// theorem is 2 or 4; mathematical failures (NotRegular, ...) become an "error" entry.
Json chain(const Context& ctx, const Element& a, int theorem, std::size_t levels);
Json sr1(const Context& ctx);

// An error report in the common envelope.
Json failure(const std::string& command, const Context* ctx, const Error& e);

// Re-derives the verdict of a saved report from its own content.
Json verify(const Json& saved);

bool passed(const Json& report);
// Deep copy with every "timing" member removed.
Json without_timing(const Json& report);

// Chain levels as stored in a chain report.
TheoremChain chain_from_json(const Json& result, const Element& a);

}  // namespace ringlab::report
