#pragma once

#include <string>
#include <vector>

#include "csr/structure.hpp"

namespace csr {

/// Process term over the grammar
///   P ::= "0" | a "." P | P "+" P | P "|" P | "(" P ")"
/// with precedence prefix > "|" > "+", both operators left-associative.
/// A bare action "a" abbreviates "a.0".
struct Term {
    enum class Op { Nil, Prefix, Choice, Par };
    Op op = Op::Nil;
    std::string label;           // Prefix only
    std::vector<Term> children;  // Prefix: 1, Choice/Par: 2

    bool operator==(const Term&) const = default;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t position);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

Term parse_term(std::string_view text);

/// Translation into a configuration structure.  Events are the prefix
/// occurrences of the term, identified as e1, e2, ... by the occurrence's
/// position in a preorder walk, so equal terms translate to identical
/// structures.  The result of any term is stable.
ConfigStructure translate(const Term& term, const Limits& limits = {});
ConfigStructure translate(std::string_view term_text, const Limits& limits = {});

std::string render_term(const Term& term);

}  // namespace csr
