#include "csr/term.hpp"

#include <algorithm>
#include <cctype>

#include "detail/bits.hpp"

namespace csr {

ParseError::ParseError(const std::string& what, std::size_t position)
    : InputError("syntax error at offset " + std::to_string(position) + ": " + what),
      position_(position) {}

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos); }

    Term parse_choice() {
        Term left = parse_par();
        while (accept('+')) {
            Term right = parse_par();
            Term node;
            node.op = Term::Op::Choice;
            node.children = {std::move(left), std::move(right)};
            left = std::move(node);
        }
        return left;
    }

    Term parse_par() {
        Term left = parse_primary();
        while (accept('|')) {
            Term right = parse_primary();
            Term node;
            node.op = Term::Op::Par;
            node.children = {std::move(left), std::move(right)};
            left = std::move(node);
        }
        return left;
    }

    Term parse_primary() {
        char c = peek();
        if (c == '0') {
            ++pos;
            return Term{};
        }
        if (c == '(') {
            ++pos;
            Term inner = parse_choice();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
                name.push_back(text[pos++]);
            }
            Term node;
            node.op = Term::Op::Prefix;
            node.label = std::move(name);
            if (accept('.')) {
                node.children.push_back(parse_primary());
            } else {
                node.children.push_back(Term{});  // bare action: a.0
            }
            return node;
        }
        fail("expected '0', an action, or '('");
    }
};

struct Translator {
    const Limits& limits;
    std::vector<Event> events;

    std::vector<Mask> walk(const Term& t) {
        switch (t.op) {
            case Term::Op::Nil:
                return {Mask{0}};
            case Term::Op::Prefix: {
                if (static_cast<int>(events.size()) >= limits.max_events ||
                    events.size() >= static_cast<std::size_t>(max_event_bits)) {
                    throw CapacityError("term needs more than " +
                                        std::to_string(limits.max_events) + " events");
                }
                int idx = static_cast<int>(events.size());
                events.push_back({"e" + std::to_string(idx + 1), t.label});
                std::vector<Mask> body = walk(t.children[0]);
                std::vector<Mask> out;
                out.reserve(body.size() + 1);
                out.push_back(0);
                for (Mask m : body) out.push_back(m | detail::bit(idx));
                return dedup(std::move(out));
            }
            case Term::Op::Choice: {
                std::vector<Mask> out = walk(t.children[0]);
                std::vector<Mask> right = walk(t.children[1]);
                out.insert(out.end(), right.begin(), right.end());
                return dedup(std::move(out));  // the branches share only the root
            }
            case Term::Op::Par: {
                std::vector<Mask> left = walk(t.children[0]);
                std::vector<Mask> right = walk(t.children[1]);
                if (left.size() * right.size() > static_cast<std::size_t>(limits.max_configs)) {
                    throw CapacityError("term needs more than " +
                                        std::to_string(limits.max_configs) + " configurations");
                }
                std::vector<Mask> out;
                out.reserve(left.size() * right.size());
                for (Mask a : left) {
                    for (Mask b : right) out.push_back(a | b);
                }
                return out;  // disjoint events, no duplicates possible
            }
        }
        throw InputError("malformed term");
    }

    std::vector<Mask> dedup(std::vector<Mask> masks) {
        std::sort(masks.begin(), masks.end());
        masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
        if (masks.size() > static_cast<std::size_t>(limits.max_configs)) {
            throw CapacityError("term needs more than " + std::to_string(limits.max_configs) +
                                " configurations");
        }
        return masks;
    }
};

}  // namespace

Term parse_term(std::string_view text) {
    Parser p{text};
    Term t = p.parse_choice();
    if (!p.eof()) p.fail("unexpected trailing input");
    return t;
}

ConfigStructure translate(const Term& term, const Limits& limits) {
    Translator tx{limits};
    std::vector<Mask> configs = tx.walk(term);
    return ConfigStructure::from_masks(std::move(tx.events), std::move(configs));
}

ConfigStructure translate(std::string_view term_text, const Limits& limits) {
    return translate(parse_term(term_text), limits);
}

std::string render_term(const Term& t) {
    switch (t.op) {
        case Term::Op::Nil:
            return "0";
        case Term::Op::Prefix:
            if (t.children[0].op == Term::Op::Nil) return t.label;
            return t.label + "." + render_term(t.children[0]);
        case Term::Op::Choice:
            return "(" + render_term(t.children[0]) + " + " + render_term(t.children[1]) + ")";
        case Term::Op::Par:
            return "(" + render_term(t.children[0]) + " | " + render_term(t.children[1]) + ")";
    }
    return "?";
}

}  // namespace csr
