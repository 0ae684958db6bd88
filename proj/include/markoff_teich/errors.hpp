#pragma once

#include <stdexcept>
#include <string>

namespace mkt {

// Invalid input: non-adjacent mediant operands, traces <= 2, triples that
// violate the Markoff-Fricke relation, malformed decimal strings, ...
// The CLI maps this to exit code 2.
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// A cross-check between two routes that must agree has failed (trace
// recursion vs. matrix oracle, log-domain violations that valid triples
// cannot produce, duplicate curve classes across sectors).
// The CLI maps this to exit code 3.
class consistency_error : public std::logic_error {
public:
    explicit consistency_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace mkt
