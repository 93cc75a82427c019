#include "kdvsym/jet.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "kdvsym/parse.hpp"
#include "kdvsym/print.hpp"

namespace kdvsym {

namespace {

bool independent(const std::string& n) { return n == "t" || n == "x"; }

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

}  // namespace

JetSpace JetSpace::standard() { return JetSpace{{{"u", 4}, {"v", 2}}}; }
JetSpace JetSpace::derivation() { return JetSpace{{{"u", 6}, {"v", 4}}}; }
JetSpace JetSpace::with_max(int u_order) { return JetSpace{{{"u", u_order}, {"v", u_order - 2}}}; }

int JetSpace::max_for(const std::string& dependent) const {
  auto it = max_order.find(dependent);
  if (it == max_order.end()) throw JetError("dependent variable " + dependent + " not in jet space");
  return it->second;
}

Expr total_derivative(const Expr& e, char direction, const JetSpace& space) {
  if (direction != 't' && direction != 'x') {
    throw JetError(std::string("unknown direction '") + direction + "'");
  }
  const std::string dir(1, direction);
  return derive(e, [&](const Atom& a) -> Expr {
    switch (a->kind) {
      case AtomKind::Symbol:
        return a->name == dir ? Expr(1) : Expr();
      case AtomKind::Jet: {
        JetIndex j = a->jet.shifted(direction);
        if (j.order() > space.max_for(a->name)) {
          throw JetError("jet order overflow: D_" + dir + " " + print_atom(a) + " exceeds order " +
                         std::to_string(space.max_for(a->name)));
        }
        return Expr::atom(make_jet(a->name, j));
      }
      case AtomKind::Function: {
        ExprAccumulator acc;
        for (std::size_t i = 0; i < a->deps.size(); ++i) {
          const std::string& d = a->deps[i];
          if (independent(d) && d != dir) continue;
          std::vector<int> idx = a->index;
          ++idx[i];
          Expr fd = Expr::atom(with_index(a, std::move(idx)));
          if (d == dir) {
            acc.add(fd);
          } else {
            JetIndex j;
            j = j.shifted(direction);
            if (j.order() > space.max_for(d)) throw JetError("jet order overflow");
            acc.add(fd * Expr::atom(make_jet(d, j)));
          }
        }
        return acc.take();
      }
      default:
        return Expr();
    }
  });
}

Expr total_derivative(const Expr& e, const JetIndex& alpha, const JetSpace& space) {
  Expr r = e;
  for (int i = 0; i < alpha.x && !r.is_zero(); ++i) r = total_derivative(r, 'x', space);
  for (int i = 0; i < alpha.t && !r.is_zero(); ++i) r = total_derivative(r, 't', space);
  return r;
}

Rule orient(const Expr& equation, std::string origin) {
  std::vector<Atom> jets;
  for (const auto& a : atoms_of(equation)) {
    if (a->kind == AtomKind::Jet) jets.push_back(a);
  }
  if (jets.empty()) throw JetError("equation contains no jet coordinate: " + print(equation));
  std::sort(jets.begin(), jets.end(), [](const Atom& a, const Atom& b) {
    if (a->jet.t != b->jet.t) return a->jet.t > b->jet.t;
    if (a->name != b->name) return a->name > b->name;  // v before u
    if (a->jet.order() != b->jet.order()) return a->jet.order() > b->jet.order();
    return compare(a, b) > 0;
  });
  const Atom& head = jets.front();
  auto lin = coefficient(equation, head, 1);
  auto rest = coefficient(equation, head, 0);
  bool linear = lin && rest && !lin->is_zero() && degree_in(equation, head) == 1 &&
                !contains_atom(*lin, head);
  if (linear) {
    for (const auto& t : equation.num().terms()) linear = linear && t.mono.exponent_of(head) >= 0;
  }
  if (!linear) {
    throw JetError("cannot isolate " + print_atom(head) + " linearly in " + print(equation));
  }
  return Rule{head, -(*rest) / *lin, std::move(origin), false};
}

std::vector<std::string> EvolutionSystem::dependents() const {
  std::vector<std::string> out;
  auto add = [&](const std::string& n) {
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  };
  for (const auto& r : rules) {
    add(r.head->name);
    for (const auto& a : atoms_of(r.rhs, true)) {
      if (a->kind == AtomKind::Jet) add(a->name);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool EvolutionSystem::has_dependent(const std::string& w) const {
  auto d = dependents();
  return std::find(d.begin(), d.end(), w) != d.end();
}

int rule_order(const Rule& r) {
  int k = r.head->jet.order();
  for (const auto& a : atoms_of(r.rhs, true)) {
    if (a->kind == AtomKind::Jet) k = std::max(k, a->jet.order());
  }
  return k;
}

// ---------------------------------------------------------------- SolutionManifold

SolutionManifold::SolutionManifold(EvolutionSystem sys, JetSpace space)
    : sys_(std::move(sys)), space_(std::move(space)) {
  for (std::size_t i = 0; i < sys_.rules.size(); ++i) {
    for (std::size_t j = i + 1; j < sys_.rules.size(); ++j) {
      if (atom_equal(sys_.rules[i].head, sys_.rules[j].head)) {
        throw JetError("head " + print_atom(sys_.rules[i].head) + " appears twice");
      }
    }
  }
}

SolutionManifold::SolutionManifold(const SolutionManifold& other)
    : sys_(other.sys_), space_(other.space_) {}

SolutionManifold& SolutionManifold::operator=(const SolutionManifold& other) {
  if (this != &other) {
    sys_ = other.sys_;
    space_ = other.space_;
    std::lock_guard<std::mutex> lock(mutex_);
    memo_.clear();
  }
  return *this;
}

std::optional<Expr> SolutionManifold::reduce_atom(const Atom& a) const { return reduce_atom_depth(a, 0); }

std::optional<Expr> SolutionManifold::reduce_atom_depth(const Atom& a, int depth) const {
  if (a->kind != AtomKind::Jet) return std::nullopt;
  if (depth > kStepBudget) throw JetError("manifold reduction exceeded its step budget");
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find(a);
    if (it != memo_.end()) return it->second;
  }
  std::optional<Expr> result;
  for (const auto& r : sys_.rules) {
    if (atom_equal(r.head, a)) {
      result = reduce_depth(r.rhs, depth + 1);
      break;
    }
  }
  if (!result && a->jet.t >= 1) {
    bool closable = false;
    for (const auto& r : sys_.rules) {
      closable = closable || (r.head->name == a->name && r.head->jet == JetIndex{1, 0});
    }
    if (closable) {
      char dir = a->jet.x > 0 ? 'x' : 't';
      JetIndex parent = a->jet.shifted(dir, -1);
      Atom pa = make_jet(a->name, parent);
      auto pr = reduce_atom_depth(pa, depth + 1);
      Expr base = pr ? *pr : Expr::atom(pa);
      result = reduce_depth(total_derivative(base, dir, space_), depth + 1);
    }
  }
  std::lock_guard<std::mutex> lock(mutex_);
  memo_.emplace(a, result);
  return result;
}

Expr SolutionManifold::reduce_depth(const Expr& e, int depth) const {
  Expr cur = e;
  for (int pass = 0; pass < 8; ++pass) {
    Expr next = map_atoms(cur, [&](const Atom& a) { return reduce_atom_depth(a, depth); });
    if (next.rep() == cur.rep()) return cur;
    cur = next;
  }
  throw JetError("manifold reduction did not reach a fixpoint");
}

Expr SolutionManifold::reduce(const Expr& e) const { return reduce_depth(e, 0); }

SolutionManifold consequences(const EvolutionSystem& sys, int order, bool include_cross,
                              const JetSpace& space) {
  if (order < 0) throw JetError("consequence order must be nonnegative");
  EvolutionSystem out = sys;
  int top = 0;
  for (const auto& r : sys.rules) top = std::max(top, rule_order(r));
  auto is_head = [&](const Atom& h) {
    for (const auto& r : out.rules) {
      if (atom_equal(r.head, h)) return true;
    }
    return false;
  };
  for (const auto& r : sys.rules) {
    if (rule_order(r) >= top) continue;
    for (int total = 1; total <= order; ++total) {
      for (int tt = 0; tt <= total; ++tt) {
        JetIndex alpha{tt, total - tt};
        JetIndex h = JetIndex{r.head->jet.t + alpha.t, r.head->jet.x + alpha.x};
        Atom head = make_jet(r.head->name, h);
        if (is_head(head)) continue;
        bool cross = false;
        for (const auto& other : sys.rules) {
          if (atom_equal(other.head, r.head) || other.head->name != r.head->name) continue;
          cross = cross || other.head->jet.divides(h);
        }
        if (cross && !include_cross) continue;
        std::string origin = "D_" + std::string(alpha.x, 'x') + std::string(alpha.t, 't') + "(" +
                             print_atom(r.head) + ")";
        Expr rhs = total_derivative(r.rhs, alpha, space);
        out.rules.push_back(Rule{head, rhs, origin, cross});
      }
    }
  }
  return SolutionManifold(std::move(out), space);
}

Expr manifold_reduce(const Expr& e, const SolutionManifold& m) { return m.reduce(e); }

EvolutionSystem parse_system(std::string_view text, Context& ctx) {
  EvolutionSystem sys;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t offset = 0;
  bool header = false;
  while (std::getline(in, line)) {
    std::size_t line_start = offset;
    offset += line.size() + 1;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.rfind("[system", 0) != 0) {
        throw ParseError("malformed header, expected [system <name>]", line_start);
      }
      sys.name = trim(t.substr(7, t.size() - 8));
      header = true;
      continue;
    }
    if (!header) throw ParseError("missing [system <name>] header", line_start);
    if (t.rfind("params:", 0) == 0 || t.rfind("nonzero:", 0) == 0) {
      bool nonzero = t[0] == 'n';
      for (const auto& p : split_list(t.substr(t.find(':') + 1))) {
        if (!ctx.has(p)) {
          ctx.add_parameter(p, nonzero);
        } else if (nonzero) {
          ctx.assume_nonzero(p);
        }
        if (std::find(sys.params.begin(), sys.params.end(), p) == sys.params.end()) sys.params.push_back(p);
      }
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'lhs = rhs'", line_start);
    std::size_t lead = line.find_first_not_of(" \t");
    std::size_t base = line_start + (lead == std::string::npos ? 0 : lead);
    Expr lhs;
    Expr rhs;
    try {
      lhs = parse(t.substr(0, eq), ctx);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), base + e.position());
    }
    try {
      rhs = parse(t.substr(eq + 1), ctx);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), base + eq + 1 + e.position());
    }
    auto head = lhs.as_atom();
    if (head && (*head)->kind == AtomKind::Jet && !contains_atom(rhs, *head)) {
      sys.rules.push_back(Rule{*head, rhs, "given", false});
    } else {
      sys.rules.push_back(orient(lhs - rhs));
    }
  }
  if (!header) throw ParseError("missing [system <name>] header", 0);
  if (sys.rules.empty()) throw ParseError("system has no equations", offset);
  return sys;
}

std::string format_system(const EvolutionSystem& sys) {
  std::string s = "[system " + sys.name + "]\n";
  if (!sys.params.empty()) {
    s += "params: ";
    for (std::size_t i = 0; i < sys.params.size(); ++i) s += (i ? ", " : "") + sys.params[i];
    s += "\n";
  }
  for (const auto& r : sys.rules) s += print_atom(r.head) + " = " + print(r.rhs) + "\n";
  return s;
}

}  // namespace kdvsym
