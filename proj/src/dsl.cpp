#include "setmeans/dsl.hpp"

#include <cctype>
#include <limits>

namespace setmeans {

namespace {

struct Token {
    enum class Kind { Ident, Int, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1;
    int column = 1;
};

std::vector<Token> lex(std::string_view src)
{
    std::vector<Token> out;
    int line = 1, column = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };
    while (i < src.size()) {
        unsigned char c = static_cast<unsigned char>(src[i]);
        if (std::isspace(c)) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = column;
        std::size_t j = i;
        if (c == 'U') {
            // The union operator never merges with a neighbouring keyword: "[0,1]Useq(...)".
            t.kind = Token::Kind::Ident;
            j = i + 1;
        } else if (std::isalpha(c) || c == '_') {
            t.kind = Token::Kind::Ident;
            while (j < src.size() && src[j] != 'U' &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
                ++j;
            }
        } else if (std::isdigit(c)) {
            t.kind = Token::Kind::Int;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
                ++j;
            }
        } else {
            t.kind = Token::Kind::Punct;
            // Keep multi-byte UTF-8 sequences together so the report shows the character.
            j = i + 1;
            while (c >= 0x80 && j < src.size() && (static_cast<unsigned char>(src[j]) & 0xC0) == 0x80) {
                ++j;
            }
        }
        t.text = std::string(src.substr(i, j - i));
        advance(j - i);
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.column = column;
    out.push_back(end);
    return out;
}

const std::vector<std::string>& termStarts()
{
    static const std::vector<std::string> s = {"'{'",     "'['",     "'('",     "'seq'",  "'tower'",
                                               "'cantor'", "'shift'", "'below'", "'above'"};
    return s;
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    SetExpr run()
    {
        SetExpr e = expr();
        expect({"'U'", "end of input"}, [](const Token& t) { return t.kind == Token::Kind::End; });
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }

    static std::string describeToken(const Token& t)
    {
        switch (t.kind) {
        case Token::Kind::End:
            return "end of input";
        case Token::Kind::Int:
            return "integer " + t.text;
        default:
            return "'" + t.text + "'";
        }
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const
    {
        const Token& t = peek();
        std::string msg = "line " + std::to_string(t.line) + ", column " + std::to_string(t.column) + ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            msg += (i == 0 ? "" : i + 1 == expected.size() ? " or " : ", ") + expected[i];
        }
        msg += ", found " + describeToken(t);
        throw ParseError(t.line, t.column, std::move(expected), msg);
    }

    template <class Pred>
    const Token& expect(std::vector<std::string> expected, Pred ok)
    {
        if (!ok(peek())) {
            fail(std::move(expected));
        }
        return take();
    }

    bool isPunct(const char* p) const { return peek().kind == Token::Kind::Punct && peek().text == p; }
    bool isIdent(const char* p) const { return peek().kind == Token::Kind::Ident && peek().text == p; }

    void punct(const char* p)
    {
        expect({std::string("'") + p + "'"}, [p](const Token& t) { return t.kind == Token::Kind::Punct && t.text == p; });
    }

    SetExpr expr()
    {
        std::vector<SetExpr> parts{term()};
        while (isIdent("U")) {
            take();
            parts.push_back(term());
        }
        return parts.size() == 1 ? std::move(parts.front()) : SetExpr::unite(std::move(parts));
    }

    // Signed digit string; `what` names the expectation in errors.
    std::string signedDigits(const char* what)
    {
        std::string sign;
        if (isPunct("-") || isPunct("+")) {
            sign = take().text == "-" ? "-" : "";
        }
        const Token& t = expect({what}, [](const Token& x) { return x.kind == Token::Kind::Int; });
        return sign + t.text;
    }

    Rational rat()
    {
        std::string num = signedDigits("rational");
        std::string den = "1";
        if (isPunct("/")) {
            take();
            if (peek().kind != Token::Kind::Int || peek().text.find_first_not_of('0') == std::string::npos) {
                fail({"positive integer"});
            }
            den = take().text;
        }
        return Rational::parse(num + "/" + den);
    }

    int integer()
    {
        const Token& at = peek();
        std::string text = signedDigits("integer");
        long v = 0;
        try {
            v = std::stol(text);
        } catch (const std::out_of_range&) {
            v = std::numeric_limits<long>::max();
        }
        if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
            throw ValidationError(position(at) + "integer " + text + " out of range");
        }
        return static_cast<int>(v);
    }

    static std::string position(const Token& t)
    {
        return "line " + std::to_string(t.line) + ", column " + std::to_string(t.column) + ": ";
    }

    template <class Build>
    SetExpr validated(const Token& at, Build build)
    {
        try {
            return build();
        } catch (const ValidationError& e) {
            throw ValidationError(position(at) + e.what());
        }
    }

    SetExpr term()
    {
        const Token& at = peek();
        if (isPunct("{")) {
            take();
            std::vector<Rational> pts{rat()};
            while (isPunct(",")) {
                take();
                pts.push_back(rat());
            }
            expect({"','", "'}'"}, [](const Token& t) { return t.kind == Token::Kind::Punct && t.text == "}"; });
            return validated(at, [&] { return finite(std::move(pts)); });
        }
        if (isPunct("[")) {
            take();
            Rational lo = rat();
            punct(",");
            Rational hi = rat();
            punct("]");
            return validated(at, [&] { return interval(lo, hi); });
        }
        if (isPunct("(")) {
            take();
            SetExpr e = expr();
            expect({"'U'", "')'"}, [](const Token& t) { return t.kind == Token::Kind::Punct && t.text == ")"; });
            return e;
        }
        if (peek().kind == Token::Kind::Ident) {
            const std::string& name = peek().text;
            if (name == "seq") {
                take();
                punct("(");
                Rational a = rat();
                punct(",");
                Rational w = rat();
                punct(",");
                Rational r = rat();
                punct(")");
                return validated(at, [&] { return geomSeq(a, w, r); });
            }
            if (name == "tower") {
                take();
                punct("(");
                int k = integer();
                punct(",");
                Rational a = rat();
                punct(",");
                Rational r = rat();
                Rational w(1);
                if (isPunct(",")) {
                    take();
                    w = rat();
                }
                expect({"','", "')'"}, [](const Token& t) { return t.kind == Token::Kind::Punct && t.text == ")"; });
                return validated(at, [&] { return tower(k, a, r, w); });
            }
            if (name == "cantor") {
                take();
                punct("(");
                Rational lo = rat();
                punct(",");
                Rational hi = rat();
                punct(",");
                int m = integer();
                punct(",");
                Rational r = rat();
                punct(")");
                return validated(at, [&] { return cantor(lo, hi, m, r); });
            }
            if (name == "shift" || name == "below" || name == "above") {
                std::string op = take().text;
                punct("(");
                SetExpr child = expr();
                expect({"'U'", "','"}, [](const Token& t) { return t.kind == Token::Kind::Punct && t.text == ","; });
                Rational x = rat();
                punct(")");
                if (op == "shift") {
                    return SetExpr::translate(std::move(child), x);
                }
                return op == "below" ? SetExpr::cutBelow(std::move(child), x) : SetExpr::cutAbove(std::move(child), x);
            }
        }
        fail(termStarts());
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

SetExpr parse(std::string_view src) { return Parser(src).run(); }

std::string renderRaw(const SetExpr& e)
{
    switch (e.kind) {
    case SetExpr::Kind::Leaf:
        return describeBlock(e.block);
    case SetExpr::Kind::Union: {
        std::string out;
        for (const auto& c : e.children) {
            std::string part = renderRaw(c);
            if (c.kind == SetExpr::Kind::Union) {
                part = "(" + part + ")";
            }
            out += (out.empty() ? "" : " U ") + part;
        }
        return out;
    }
    case SetExpr::Kind::Translate:
        return "shift(" + renderRaw(e.children.front()) + ", " + e.param.str() + ")";
    case SetExpr::Kind::CutBelow:
        return "below(" + renderRaw(e.children.front()) + ", " + e.param.str() + ")";
    case SetExpr::Kind::CutAbove:
        return "above(" + renderRaw(e.children.front()) + ", " + e.param.str() + ")";
    }
    return {};
}

std::string render(const SetExpr& e)
{
    try {
        BlockSet h = normalize(e);
        if (!h.empty()) {
            return describe(h);
        }
    } catch (const SetError&) {
        // Fall through: the structural form reproduces the same failure.
    }
    return renderRaw(e);
}

} // namespace setmeans
