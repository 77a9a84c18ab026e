#pragma once

// Small arithmetic expression language for excitation and load profiles.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ('-' | '+') unary | power
//   power  := atom ('^' unary)?
//   atom   := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
//
// Names are bound to variable slots at compile time; `pi` is a constant.

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace aslo::expr {

struct Node;

class Expression {
public:
    Expression() = default;

    /// Throws ConfigError naming the offending token.
    static Expression compile(const std::string& text, const std::vector<std::string>& variables);

    double eval(std::span<const double> values) const;
    const std::string& text() const { return text_; }
    bool empty() const { return !root_; }

private:
    std::string text_;
    std::shared_ptr<const Node> root_;
};

}  // namespace aslo::expr
