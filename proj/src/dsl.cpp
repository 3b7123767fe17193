#include "dsl.hpp"

#include <cctype>
#include <optional>

#include "errors.hpp"

namespace vfl {

std::string variable_name(std::size_t axis, std::size_t dim) {
  static const char* const kAliases[] = {"x", "y", "z"};
  if (dim <= 3) return kAliases[axis];
  return "x" + std::to_string(axis + 1);
}

namespace {

// ---------------------------------------------------------------------------
// parsing

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

struct Value {
  bool is_field = false;
  CoeffFn f;
  VectorField v;
};

class Parser {
public:
  Parser(std::string_view text, std::size_t dim, std::size_t line) : dim_(dim), line_(line) {
    tokenize(text);
  }

  Value parse_all() {
    Value v = expr();
    if (peek().kind != Tok::End) fail("'+', '-', '*' or end of input", "unexpected '" + peek().text + "'");
    return v;
  }

private:
  [[noreturn]] void fail(const std::string& expected, const std::string& detail) const {
    throw ParseError(line_, peek().column, expected, detail);
  }

  void tokenize(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
      char c = s[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      std::size_t col = i + 1;
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j + 1 < s.size() && s[j] == '/' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
          ++j;
          while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        }
        toks_.push_back({Tok::Number, std::string(s.substr(i, j - i)), col});
        i = j;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
        toks_.push_back({Tok::Ident, std::string(s.substr(i, j - i)), col});
        i = j;
      } else {
        Tok k;
        switch (c) {
          case '+': k = Tok::Plus; break;
          case '-': k = Tok::Minus; break;
          case '*': k = Tok::Star; break;
          case '^': k = Tok::Caret; break;
          case '(': k = Tok::LParen; break;
          case ')': k = Tok::RParen; break;
          default:
            throw ParseError(line_, col, "number, identifier or operator",
                             std::string("invalid character '") + c + "'");
        }
        toks_.push_back({k, std::string(1, c), col});
        ++i;
      }
    }
    toks_.push_back({Tok::End, "end of input", s.size() + 1});
  }

  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  std::optional<std::size_t> variable(const std::string& name) const {
    for (std::size_t a = 0; a < dim_; ++a) {
      if (name == "x" + std::to_string(a + 1)) return a;
      if (dim_ <= 3 && name == variable_name(a, dim_)) return a;
    }
    return std::nullopt;
  }

  Value function_value(CoeffFn f) const { return Value{false, std::move(f), VectorField(dim_)}; }

  Value add(Value a, const Value& b, bool subtract) const {
    auto zero_function = [](const Value& v) { return !v.is_field && v.f.is_zero(); };
    if (a.is_field != b.is_field) {
      if (zero_function(b)) return a;
      if (!zero_function(a))
        throw ParseError(line_, peek().column, "terms of one kind", "cannot add a function and a vector field");
      a = Value{true, CoeffFn(dim_), VectorField(dim_)};
    }
    if (a.is_field) {
      if (subtract) a.v -= b.v;
      else a.v += b.v;
    } else {
      if (subtract) a.f -= b.f;
      else a.f += b.f;
    }
    return a;
  }

  Value multiply(const Value& a, const Value& b, std::size_t col) const {
    if (a.is_field && b.is_field) throw ParseError(line_, col, "a function factor", "product of two partials");
    if (!a.is_field && !b.is_field) return function_value(a.f * b.f);
    const Value& fld = a.is_field ? a : b;
    const CoeffFn& fn = a.is_field ? b.f : a.f;
    std::vector<CoeffFn> comps;
    for (const auto& c : fld.v.comps()) comps.push_back(c * fn);
    return Value{true, CoeffFn(dim_), VectorField(std::move(comps))};
  }

  Value expr() {
    bool negate = false;
    if (accept(Tok::Minus)) negate = true;
    else accept(Tok::Plus);
    Value acc = term();
    if (negate) acc = multiply(acc, function_value(CoeffFn::constant(dim_, Scalar(-1))), 0);
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool sub = take().kind == Tok::Minus;
      acc = add(std::move(acc), term(), sub);
    }
    return acc;
  }

  Value term() {
    Value acc = factor();
    while (peek().kind == Tok::Star) {
      take();
      std::size_t col = peek().column;
      acc = multiply(acc, factor(), col);
    }
    return acc;
  }

  Value factor() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        Token n = take();
        mpq_class q;
        q.set_str(n.text, 10);
        if (q.get_den() == 0) throw ParseError(line_, n.column, "nonzero denominator", "division by zero");
        q.canonicalize();
        return function_value(CoeffFn::constant(dim_, Scalar(q)));
      }
      case Tok::LParen: {
        take();
        Value v = expr();
        if (!accept(Tok::RParen)) fail("')'", "unbalanced parenthesis");
        return v;
      }
      case Tok::Ident: {
        Token id = take();
        if (id.text == "i") return function_value(CoeffFn::constant(dim_, Scalar::imag_unit()));
        if (id.text == "exp") return exponential(id);
        if (auto a = variable(id.text)) {
          unsigned e = 1;
          if (accept(Tok::Caret)) {
            if (peek().kind != Tok::Number || peek().text.find('/') != std::string::npos)
              fail("natural exponent", "bad exponent '" + peek().text + "'");
            e = static_cast<unsigned>(std::stoul(take().text));
          }
          MultiIndex alpha(dim_, 0);
          alpha[*a] = e;
          return function_value(CoeffFn::monomial(dim_, std::move(alpha)));
        }
        if (id.text.size() > 1 && id.text[0] == 'D') {
          if (auto a = variable(id.text.substr(1)))
            return Value{true, CoeffFn(dim_), VectorField::partial(dim_, *a)};
        }
        throw ParseError(line_, id.column, expected_factor(), "unknown identifier '" + id.text + "'");
      }
      default:
        fail(expected_factor(), "unexpected '" + t.text + "'");
    }
  }

  Value exponential(const Token& id) {
    if (!accept(Tok::LParen)) fail("'('", "exp needs an argument");
    std::size_t col = peek().column;
    Value arg = expr();
    if (!accept(Tok::RParen)) fail("')'", "unbalanced parenthesis");
    if (arg.is_field) throw ParseError(line_, col, "linear form", "vector field inside exp");
    std::vector<Scalar> lambda(dim_);
    for (const auto& [k, c] : arg.f.terms()) {
      if (!k.is_polynomial() || k.degree() != 1)
        throw ParseError(line_, col, "linear form", "exp argument must be a homogeneous linear form");
      for (std::size_t a = 0; a < dim_; ++a)
        if (k.alpha[a]) lambda[a] = c;
    }
    (void)id;
    return function_value(CoeffFn::exponential(dim_, std::move(lambda)));
  }

  std::string expected_factor() const { return "number, 'i', variable, 'exp', partial or '('"; }

  std::size_t dim_;
  std::size_t line_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// printing

// Coefficient rendered as a prefix for further factors ("3*", "3/2*i*",
// "(1+i)*") or alone. The sign is pulled out when the scalar is real or
// purely imaginary.
struct SignedScalar {
  bool negative;
  std::string body;  // empty for unit
  bool unit;
};

SignedScalar split_sign(const Scalar& c) {
  if (c.is_real() || sgn(c.re()) == 0) {
    bool neg = c.is_real() ? sgn(c.re()) < 0 : sgn(c.im()) < 0;
    Scalar mag = neg ? -c : c;
    if (mag.is_one()) return {neg, "1", true};
    return {neg, mag.str(), false};
  }
  return {false, "(" + c.str() + ")", false};
}

std::string linform(const std::vector<Scalar>& lambda) {
  std::string out;
  const std::size_t n = lambda.size();
  for (std::size_t a = 0; a < n; ++a) {
    if (lambda[a].is_zero()) continue;
    SignedScalar s = split_sign(lambda[a]);
    if (out.empty()) out += s.negative ? "-" : "";
    else out += s.negative ? " - " : " + ";
    if (!s.unit) out += s.body + "*";
    out += variable_name(a, n);
  }
  return out;
}

// Factors of a term without its coefficient; empty for the constant 1.
std::string term_factors(const TermKey& k) {
  const std::size_t n = k.alpha.size();
  std::string out;
  auto join = [&](const std::string& f) {
    if (!out.empty()) out += "*";
    out += f;
  };
  for (std::size_t a = 0; a < n; ++a) {
    if (k.alpha[a] == 0) continue;
    std::string v = variable_name(a, n);
    if (k.alpha[a] > 1) v += "^" + std::to_string(k.alpha[a]);
    join(v);
  }
  if (!k.is_polynomial()) join("exp(" + linform(k.lambda) + ")");
  return out;
}

void append_term(std::string& out, const Scalar& c, const std::string& factors) {
  SignedScalar s = split_sign(c);
  if (out.empty()) out += s.negative ? "-" : "";
  else out += s.negative ? " - " : " + ";
  if (factors.empty()) {
    out += s.body;
  } else {
    if (!s.unit) out += s.body + "*";
    out += factors;
  }
}

}  // namespace

VectorField parse_field(std::string_view text, std::size_t dim, std::size_t line) {
  if (dim == 0) throw UsageError("ambient dimension must be positive");
  Parser p(text, dim, line);
  Value v = p.parse_all();
  if (!v.is_field) {
    if (v.f.is_zero()) return VectorField(dim);
    throw ParseError(line, 1, "vector field (terms ending in a partial such as Dx)",
                     "expression is a function, not a vector field");
  }
  return v.v;
}

CoeffFn parse_function(std::string_view text, std::size_t dim, std::size_t line) {
  if (dim == 0) throw UsageError("ambient dimension must be positive");
  Parser p(text, dim, line);
  Value v = p.parse_all();
  if (v.is_field) throw ParseError(line, 1, "function", "expression contains a partial");
  return v.f;
}

std::string print_function(const CoeffFn& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it)
    append_term(out, it->second, term_factors(it->first));
  return out;
}

std::string print_field(const VectorField& v) {
  std::string out;
  for (std::size_t k = 0; k < v.dim(); ++k) {
    const std::string partial = "D" + variable_name(k, v.dim());
    const auto& terms = v[k].terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      std::string factors = term_factors(it->first);
      append_term(out, it->second, factors.empty() ? partial : factors + "*" + partial);
    }
  }
  return out.empty() ? "0" : out;
}

std::string print_point(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += p[i].str();
  }
  return out + ")";
}

std::vector<VectorField> parse_field_lines(std::string_view text, std::size_t dim) {
  std::vector<VectorField> out;
  std::size_t line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    std::string_view l = text.substr(start, end - start);
    if (auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    bool blank = l.find_first_not_of(" \t\r") == std::string_view::npos;
    if (!blank) out.push_back(parse_field(l, dim, line));
    start = end + 1;
  }
  return out;
}

}  // namespace vfl
