#include "afree/dsl.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <tuple>
#include <vector>

namespace afree {
namespace {

enum class Tok {
  kInt,
  kIdent,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kCaret,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kComma,
  kEquals,
  kSemi,
  kEnd,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  Integer value = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_ws();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        digits += advance();
      t.kind = Tok::kInt;
      t.text = digits;
      t.value = Integer(digits);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string name;
      while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_])))
        name += advance();
      t.kind = Tok::kIdent;
      t.text = name;
      return t;
    }
    advance();
    switch (c) {
      case '+': t.kind = Tok::kPlus; break;
      case '-': t.kind = Tok::kMinus; break;
      case '*': t.kind = Tok::kStar; break;
      case '/': t.kind = Tok::kSlash; break;
      case '^': t.kind = Tok::kCaret; break;
      case '(': t.kind = Tok::kLParen; break;
      case ')': t.kind = Tok::kRParen; break;
      case '[': t.kind = Tok::kLBracket; break;
      case ']': t.kind = Tok::kRBracket; break;
      case ',': t.kind = Tok::kComma; break;
      case '=': t.kind = Tok::kEquals; break;
      case ';': t.kind = Tok::kSemi; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.col);
    }
    t.text = std::string(1, c);
    return t;
  }

 private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// A polynomial whose variable indices are not yet validated against d
// (coefficients precede the D[...] that may fix the dimension).
struct RawMonomial {
  std::map<int, int> exps;  // 1-based variable index -> power
  Rational coeff;
};
struct RawPoly {
  std::vector<RawMonomial> monomials;
  int max_var = 0;
  Token at;  // for error positions
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { shift(); }

  OperatorSystem parse() {
    if (cur_.kind == Tok::kIdent && cur_.text == "dims") {
      shift();
      const Token dim_tok = expect(Tok::kInt, "dimension");
      d_ = int_value(dim_tok);
      if (*d_ < 1) throw ParseError("dimension must be >= 1", dim_tok.line, dim_tok.col);
      accept(Tok::kSemi);
    }
    std::vector<Equation> eqs;
    while (cur_.kind != Tok::kEnd) eqs.push_back(parse_equation());
    if (eqs.empty()) throw ParseError("no equations in source", cur_.line, cur_.col);
    for (auto& eq : eqs)
      for (auto& [a, coeff] : eq.terms) coeff.resize(max_component_, PolyCoefficient(*d_));
    return OperatorSystem(*d_, max_component_, std::move(eqs));
  }

 private:
  Equation parse_equation() {
    Equation eq;
    Rational sign = 1;
    Token head = cur_;
    while (true) {
      auto [alpha, comp, poly] = parse_term();
      auto it = eq.terms.find(alpha);
      if (it == eq.terms.end())
        it = eq.terms
                 .emplace(alpha, std::vector<PolyCoefficient>(kMaxComponents, PolyCoefficient(*d_)))
                 .first;
      it->second[comp - 1] += poly.scaled(sign);
      if (cur_.kind == Tok::kPlus) {
        sign = 1;
        shift();
      } else if (cur_.kind == Tok::kMinus) {
        sign = -1;
        shift();
      } else {
        break;
      }
    }
    expect(Tok::kEquals, "'='");
    const Token zero = expect(Tok::kInt, "0");
    if (zero.value != 0)
      throw ParseError("equations must have right-hand side 0", zero.line, zero.col);
    accept(Tok::kSemi);
    // Drop alpha entries whose coefficient vector cancelled to zero.
    for (auto it = eq.terms.begin(); it != eq.terms.end();) {
      bool nonzero = false;
      for (const auto& p : it->second) nonzero = nonzero || !p.zero();
      it = nonzero ? std::next(it) : eq.terms.erase(it);
    }
    if (eq.terms.empty()) throw ParseError("equation has no nonzero term", head.line, head.col);
    return eq;
  }

  std::tuple<MultiIndex, int, PolyCoefficient> parse_term() {
    Rational cmul = 1;
    std::vector<RawPoly> polys;
    while (cur_.kind == Tok::kInt || cur_.kind == Tok::kLParen) {
      if (cur_.kind == Tok::kInt) {
        cmul *= parse_rational();
      } else {
        polys.push_back(parse_paren_poly());
      }
      expect(Tok::kStar, "'*' between coefficient and D[...]");
    }
    const MultiIndex alpha = parse_derivative();  // fixes d_ when undeclared
    const int comp = parse_component();
    PolyCoefficient out = PolyCoefficient::constant(*d_, cmul);
    for (const RawPoly& rp : polys) out = out * realize(rp);
    return {alpha, comp, out};
  }

  PolyCoefficient realize(const RawPoly& raw) const {
    if (raw.max_var > *d_)
      throw ParseError("variable x" + std::to_string(raw.max_var) + " exceeds dimension " +
                           std::to_string(*d_),
                       raw.at.line, raw.at.col);
    PolyCoefficient p(*d_);
    for (const RawMonomial& mono : raw.monomials) {
      std::vector<int> e(*d_, 0);
      for (const auto& [k, v] : mono.exps) e[k - 1] = v;
      p.add_term(MultiIndex(std::move(e)), mono.coeff);
    }
    return p;
  }

  Rational parse_rational() {
    const Token num = expect(Tok::kInt, "integer");
    Rational q(num.value);
    if (cur_.kind == Tok::kSlash) {
      shift();
      const Token den = expect(Tok::kInt, "denominator");
      if (den.value == 0) throw ParseError("zero denominator", den.line, den.col);
      q /= Rational(den.value);
    }
    return q;
  }

  RawPoly parse_paren_poly() {
    RawPoly raw;
    raw.at = cur_;
    expect(Tok::kLParen, "'('");
    Rational sign = 1;
    if (cur_.kind == Tok::kMinus) {
      sign = -1;
      shift();
    } else if (cur_.kind == Tok::kPlus) {
      shift();
    }
    while (true) {
      RawMonomial mono = parse_poly_product(raw);
      mono.coeff *= sign;
      raw.monomials.push_back(std::move(mono));
      if (cur_.kind == Tok::kPlus) {
        sign = 1;
        shift();
      } else if (cur_.kind == Tok::kMinus) {
        sign = -1;
        shift();
      } else {
        break;
      }
    }
    expect(Tok::kRParen, "')'");
    return raw;
  }

  RawMonomial parse_poly_product(RawPoly& raw) {
    RawMonomial mono;
    mono.coeff = 1;
    while (true) {
      if (cur_.kind == Tok::kInt) {
        mono.coeff *= parse_rational();
      } else if (cur_.kind == Tok::kIdent) {
        const int k = parse_x_var();
        int e = 1;
        if (cur_.kind == Tok::kCaret) {
          shift();
          if (cur_.kind == Tok::kMinus)
            throw ParseError("negative exponent", cur_.line, cur_.col);
          e = int_value(expect(Tok::kInt, "exponent"));
        }
        mono.exps[k] += e;
        raw.max_var = std::max(raw.max_var, k);
      } else {
        throw ParseError("expected monomial factor", cur_.line, cur_.col);
      }
      if (cur_.kind == Tok::kStar) {
        shift();
        continue;
      }
      break;
    }
    return mono;
  }

  int parse_x_var() {
    const Token t = expect(Tok::kIdent, "variable");
    int k = 0;
    if (t.text.size() > 1 && t.text[0] == 'x') {
      k = index_suffix(t);
    } else if (t.text == "x") {
      k = int_value(expect(Tok::kInt, "variable index"));
    } else {
      throw ParseError("unknown identifier '" + t.text + "' in coefficient", t.line, t.col);
    }
    if (k < 1) throw ParseError("variable index must be >= 1", t.line, t.col);
    return k;
  }

  MultiIndex parse_derivative() {
    const Token dtok = expect(Tok::kIdent, "D[...]");
    if (dtok.text != "D")
      throw ParseError("expected D[...] derivative term, got '" + dtok.text + "'", dtok.line,
                       dtok.col);
    expect(Tok::kLBracket, "'['");
    std::vector<int> exps;
    while (true) {
      if (cur_.kind == Tok::kMinus)
        throw ParseError("negative exponent in multi-index", cur_.line, cur_.col);
      exps.push_back(int_value(expect(Tok::kInt, "derivative order")));
      if (cur_.kind == Tok::kComma) {
        shift();
        continue;
      }
      break;
    }
    const Token close = expect(Tok::kRBracket, "']'");
    if (!d_) {
      d_ = static_cast<int>(exps.size());
    } else if (static_cast<int>(exps.size()) != *d_) {
      throw ParseError("multi-index of length " + std::to_string(exps.size()) +
                           ", expected dimension " + std::to_string(*d_),
                       close.line, close.col);
    }
    return MultiIndex(std::move(exps));
  }

  int parse_component() {
    const Token t = expect(Tok::kIdent, "component u<k>");
    int k = 0;
    if (t.text.size() > 1 && t.text[0] == 'u') {
      k = index_suffix(t);
    } else if (t.text == "u") {
      k = int_value(expect(Tok::kInt, "component index"));
    } else {
      throw ParseError("expected component u<k>, got '" + t.text + "'", t.line, t.col);
    }
    if (k < 1) throw ParseError("undeclared component index u" + std::to_string(k), t.line, t.col);
    if (k > kMaxComponents)
      throw ParseError("component index u" + std::to_string(k) + " too large", t.line, t.col);
    max_component_ = std::max(max_component_, k);
    return k;
  }

  static int index_suffix(const Token& t) {
    for (size_t i = 1; i < t.text.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t.text[i])))
        throw ParseError("malformed identifier '" + t.text + "'", t.line, t.col);
    return std::stoi(t.text.substr(1));
  }

  static int int_value(const Token& t) {
    if (t.value > 1000000) throw ParseError("integer too large", t.line, t.col);
    return t.value.convert_to<int>();
  }

  Token expect(Tok kind, const std::string& what) {
    if (cur_.kind != kind) throw ParseError("expected " + what, cur_.line, cur_.col);
    Token t = cur_;
    shift();
    return t;
  }

  bool accept(Tok kind) {
    if (cur_.kind == kind) {
      shift();
      return true;
    }
    return false;
  }

  void shift() { cur_ = lex_.next(); }

  static constexpr int kMaxComponents = 64;

  Lexer lex_;
  Token cur_;
  std::optional<int> d_;
  int max_component_ = 0;
};

std::string poly_string(const PolyCoefficient& p) {
  std::string s;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Rational a = c;
    const bool neg = a < 0;
    if (neg) a = -a;
    std::string mono;
    const bool has_var = e.order() > 0;
    if (!has_var || a != 1) mono = to_string(a);
    for (int k = 0; k < e.dim(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(k + 1);
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    if (first) {
      s += neg ? "-" : "";
    } else {
      s += neg ? " - " : " + ";
    }
    s += mono;
    first = false;
  }
  return s;
}

}  // namespace

OperatorSystem parse_operator(std::string_view source) { return Parser(source).parse(); }

std::string serialize_operator(const OperatorSystem& op) {
  std::ostringstream os;
  os << "dims " << op.d() << ";\n";
  for (int j = 0; j < op.n(); ++j) {
    bool first = true;
    for (const auto& [alpha, coeff] : op.equation(j).terms) {
      for (int k = 0; k < op.m(); ++k) {
        if (coeff[k].zero()) continue;
        if (!first) os << " + ";
        if (!coeff[k].is_constant(1)) os << "(" << poly_string(coeff[k]) << ") * ";
        os << "D[";
        for (int a = 0; a < op.d(); ++a) {
          if (a) os << ",";
          os << alpha[a];
        }
        os << "] u" << (k + 1);
        first = false;
      }
    }
    os << " = 0;\n";
  }
  return os.str();
}

}  // namespace afree
