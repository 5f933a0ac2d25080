// Expression parser and printer for polynomials over named variables.
//
// Grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' exponent)?
//   atom   := number ['/' number] | name ['[' int (',' int)* ']'] | '(' expr ')' | '-' factor
#pragma once

#include "thomas/janet.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace thomas {

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, std::size_t line, std::size_t column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line),
          column_(column)
    {
    }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

/// Maps names to variable keys. Algebraic contexts list variables in
/// ascending ranking order (key = position); differential contexts wrap a
/// DiffRanking, where a bare indeterminate name means its order-0 jet.
class VariableContext {
public:
    VariableContext() = default;
    explicit VariableContext(std::vector<std::string> ascending) : names_(std::move(ascending))
    {
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (names_[i] == names_[j]) throw std::invalid_argument("duplicate variable: " + names_[i]);
    }
    explicit VariableContext(DiffRanking ranking) : ranking_(std::make_shared<DiffRanking>(std::move(ranking))) {}

    bool differential() const { return ranking_ != nullptr; }
    const DiffRanking& ranking() const { return *ranking_; }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<Var> lookup(const std::string& name) const
    {
        if (ranking_) {
            const auto& ind = ranking_->indeterminates();
            auto it = std::find(ind.begin(), ind.end(), name);
            if (it == ind.end()) return std::nullopt;
            return ranking_->variable(static_cast<std::uint32_t>(it - ind.begin()),
                                      MultiIndex(ranking_->derivation_count(), 0));
        }
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) return std::nullopt;
        return static_cast<Var>(it - names_.begin());
    }

    std::string name(Var v) const
    {
        if (ranking_) return ranking_->name(v);
        if (v >= names_.size()) throw std::out_of_range("unknown variable key");
        return names_[v];
    }

    std::string print(const Polynomial& p) const
    {
        return to_string(p, [this](Var v) { return name(v); });
    }

private:
    std::vector<std::string> names_;
    std::shared_ptr<DiffRanking> ranking_;
};

namespace detail {

class ExpressionParser {
public:
    ExpressionParser(std::string_view src, const VariableContext& ctx) : src_(src), ctx_(ctx) {}

    Polynomial parse()
    {
        Polynomial p = expr();
        skip();
        if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return p;
    }

private:
    std::string_view src_;
    const VariableContext& ctx_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const
    {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
            if (src_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw parse_error(msg, line, col);
    }
    [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

    void skip()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool accept(char c)
    {
        skip();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    std::string digits()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return std::string(src_.substr(start, pos_ - start));
    }

    Polynomial expr()
    {
        Polynomial p;
        skip();
        if (accept('-')) p = -term();
        else {
            accept('+');
            p = term();
        }
        while (true) {
            if (accept('+')) p += term();
            else if (accept('-')) p -= term();
            else return p;
        }
    }

    Polynomial term()
    {
        Polynomial p = factor();
        while (accept('*')) p *= factor();
        return p;
    }

    Polynomial factor()
    {
        Polynomial base = atom();
        if (!accept('^')) return base;
        skip();
        const std::size_t at = pos_;
        bool negative = false;
        if (accept('(')) {
            negative = accept('-');
            const std::string d = digits();
            expect(')');
            if (negative) fail("negative exponent", at);
            return base.pow(exponent(d, at));
        }
        if (accept('-')) fail("negative exponent", at);
        return base.pow(exponent(digits(), at));
    }

    unsigned exponent(const std::string& d, std::size_t at) const
    {
        if (d.size() > 6) fail("exponent too large", at);
        return static_cast<unsigned>(std::stoul(d));
    }

    Polynomial atom()
    {
        skip();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            expect(')');
            return p;
        }
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t at = pos_;
            Rational r{Integer(digits())};
            if (accept('/')) {
                Integer den(digits());
                if (den == 0) fail("zero denominator", at);
                r /= Rational(den);
            }
            r.canonicalize();
            return Polynomial(r);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t at = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            const std::string name(src_.substr(at, pos_ - at));
            skip();
            if (pos_ < src_.size() && src_[pos_] == '[') return jet(name, at);
            auto v = ctx_.lookup(name);
            if (!v) fail("unknown identifier '" + name + "'", at);
            return Polynomial::variable(*v);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Polynomial jet(const std::string& name, std::size_t at)
    {
        if (!ctx_.differential()) fail("jet index on algebraic variable '" + name + "'", at);
        const auto& ind = ctx_.ranking().indeterminates();
        auto it = std::find(ind.begin(), ind.end(), name);
        if (it == ind.end()) fail("unknown identifier '" + name + "'", at);
        expect('[');
        MultiIndex k;
        do {
            const std::string d = digits();
            if (d.size() > 4) fail("jet index too large");
            k.push_back(static_cast<std::uint32_t>(std::stoul(d)));
        } while (accept(','));
        expect(']');
        if (k.size() != ctx_.ranking().derivation_count())
            fail("jet '" + name + "' needs " + std::to_string(ctx_.ranking().derivation_count()) + " indices", at);
        return Polynomial::variable(ctx_.ranking().variable(static_cast<std::uint32_t>(it - ind.begin()), k));
    }
};

}  // namespace detail

inline Polynomial parse_expression(std::string_view src, const VariableContext& ctx)
{
    return detail::ExpressionParser(src, ctx).parse();
}

}  // namespace thomas
