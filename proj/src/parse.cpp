#include "kdvsym/parse.hpp"

#include <algorithm>
#include <cctype>

#include "kdvsym/calculus.hpp"

namespace kdvsym {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
      position_(position),
      message_(message) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Context& ctx) : s_(text), ctx_(ctx) {}

  Node run() {
    skip_ws();
    if (at_end()) fail("empty expression");
    Node n = expr();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

  bool at_end() const { return pos_ >= s_.size(); }
  char cur() const { return at_end() ? '\0' : s_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (cur() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (at_end()) fail(std::string("expected '") + c + "' but reached end of input");
      fail(std::string("expected '") + c + "' but found '" + cur() + "'");
    }
  }

  Node expr() {
    std::vector<Node> terms{term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(-term());
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms[0] : Node::sum(std::move(terms));
  }

  Node term() {
    std::vector<Node> factors{factor()};
    for (;;) {
      if (accept('*')) {
        factors.push_back(factor());
      } else if (accept('/')) {
        factors.push_back(Node::power(factor(), -1));
      } else {
        break;
      }
    }
    return factors.size() == 1 ? factors[0] : Node::product(std::move(factors));
  }

  Node factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    Node b = base();
    if (accept('^')) {
      int k = exponent();
      if (k == 0) return Node::number(1);
      return Node::power(b, k);
    }
    return b;
  }

  int exponent() {
    bool paren = accept('(');
    bool neg = false;
    if (accept('-')) {
      neg = true;
    } else {
      accept('+');
    }
    skip_ws();
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(cur()))) ++pos_;
    if (start == pos_) fail("exponent must be an integer");
    std::string digits(s_.substr(start, pos_ - start));
    if (digits.size() > 6) fail_at("exponent too large", start);
    if (paren) expect(')');
    int k = std::stoi(digits);
    return neg ? -k : k;
  }

  Node number() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(cur()))) ++pos_;
    std::string whole(s_.substr(start, pos_ - start));
    std::string frac;
    if (cur() == '.') {
      ++pos_;
      std::size_t fs = pos_;
      while (std::isdigit(static_cast<unsigned char>(cur()))) ++pos_;
      frac = std::string(s_.substr(fs, pos_ - fs));
    }
    if (whole.empty() && frac.empty()) fail_at("malformed number", start);
    mpz_class num(whole.empty() ? "0" : whole);
    mpz_class den = 1;
    for (char c : frac) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
    Rational q(num, den);
    q.canonicalize();
    return Node::number(q);
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(cur()))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Node base() {
    skip_ws();
    if (at_end()) fail("unexpected end of input");
    char c = cur();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      Node n = expr();
      expect(')');
      return n;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected '") + c + "'");
    std::size_t start = pos_;
    std::string name = identifier();
    skip_ws();
    if ((name == "ln" || name == "exp" || name == "diff") && cur() == '(') {
      ++pos_;
      if (name == "diff") return diff();
      Node arg = expr();
      expect(')');
      return name == "ln" ? Node::ln(arg) : Node::exp(arg);
    }
    std::string sub;
    std::size_t sub_pos = pos_;
    if (cur() == '_') {
      ++pos_;
      sub_pos = pos_;
      while (std::isalpha(static_cast<unsigned char>(cur()))) sub += s_[pos_++];
      if (sub.empty()) fail("empty subscript");
    }
    int primes = 0;
    while (cur() == '\'') {
      ++primes;
      ++pos_;
    }
    if (auto kind = ctx_.symbol_kind(name)) {
      if (primes) fail_at("primes are only allowed on functions", start);
      if (*kind == SymbolKind::Dependent) {
        JetIndex j;
        for (char d : sub) {
          if (d == 't') {
            ++j.t;
          } else if (d == 'x') {
            ++j.x;
          } else {
            fail_at(std::string("'") + d + "' is not an independent variable", sub_pos);
          }
        }
        return Node::atom(make_jet(name, j));
      }
      if (!sub.empty()) fail_at("subscripts are only allowed on dependent variables and functions", sub_pos);
      return Node::atom(make_symbol(name));
    }
    const FunctionSignature* sig = ctx_.function(name);
    if (!sig) fail_at("unknown identifier '" + name + "'", start);
    std::vector<int> index(sig->deps.size(), 0);
    for (char d : sub) {
      auto it = std::find(sig->deps.begin(), sig->deps.end(), std::string(1, d));
      if (it == sig->deps.end()) {
        fail_at(name + " does not depend on " + std::string(1, d), sub_pos);
      }
      ++index[it - sig->deps.begin()];
    }
    if (primes) {
      if (sig->deps.size() != 1) fail_at("primes need a function of one variable", start);
      index[0] += primes;
    }
    skip_ws();
    if (cur() == '(') {
      std::size_t arg_pos = pos_;
      ++pos_;
      std::vector<std::string> args;
      do {
        skip_ws();
        args.push_back(identifier());
      } while (accept(','));
      expect(')');
      if (args != sig->deps) {
        std::string expected;
        for (std::size_t i = 0; i < sig->deps.size(); ++i) expected += (i ? "," : "") + sig->deps[i];
        fail_at("arguments of " + name + " must be (" + expected + ")", arg_pos);
      }
    }
    return Node::atom(make_function(name, sig->deps, std::move(index)));
  }

  Node diff() {
    Node inner = expr();
    expect(',');
    skip_ws();
    std::size_t var_pos = pos_;
    std::string var = identifier();
    if (var.empty()) fail("expected a variable name");
    if (!ctx_.symbol_kind(var)) fail_at("unknown variable '" + var + "'", var_pos);
    int times = 1;
    if (accept(',')) {
      skip_ws();
      std::size_t n_pos = pos_;
      std::string digits;
      while (std::isdigit(static_cast<unsigned char>(cur()))) digits += s_[pos_++];
      if (digits.empty() || digits.size() > 3) fail_at("derivative count must be a small integer", n_pos);
      times = std::stoi(digits);
    }
    expect(')');
    Expr e = normalize(inner);
    if (auto a = e.as_atom(); a && (*a)->kind == AtomKind::Function && !dep_position(*a, var)) {
      fail_at((*a)->name + " does not depend on " + var, var_pos);
    }
    return to_node(differentiate(e, var, times));
  }

  std::string_view s_;
  const Context& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Node parse_node(std::string_view text, const Context& ctx) { return Parser(text, ctx).run(); }

Expr parse(std::string_view text, const Context& ctx) {
  Node n = parse_node(text, ctx);
  try {
    return normalize(n);
  } catch (const std::domain_error& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace kdvsym
