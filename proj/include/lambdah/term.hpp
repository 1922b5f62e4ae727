#ifndef LAMBDAH_TERM_HPP
#define LAMBDAH_TERM_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "lambdah/error.hpp"

namespace lambdah {

namespace detail {
struct Node;
using NodePtr = std::shared_ptr<const Node>;
}  // namespace detail

// An immutable lambda-H term in de Bruijn notation: variables, abstractions,
// applications and the constant H. Copies share structure.
//
// Var(i) refers to the i-th enclosing binder; indices at or above the binder
// depth refer to the free context (free variable j at depth d is Var(d + j)).
// Structural equality is alpha-equivalence.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Abs, App, H };

  // The constant H.
  Term();

  static Term var(std::uint32_t index);
  static Term abs(const Term& body);
  static Term app(const Term& fun, const Term& arg);
  static Term h() { return Term(); }

  Kind kind() const noexcept;
  bool is_var() const noexcept { return kind() == Kind::Var; }
  bool is_abs() const noexcept { return kind() == Kind::Abs; }
  bool is_app() const noexcept { return kind() == Kind::App; }
  bool is_h() const noexcept { return kind() == Kind::H; }

  // Pre: is_var().
  std::uint32_t index() const noexcept;
  // Pre: is_abs().
  Term body() const noexcept;
  // Pre: is_app().
  Term fun() const noexcept;
  Term arg() const noexcept;

  // Node count; Var, Abs, App and H each count one.
  std::size_t size() const noexcept;
  // Height of the syntax tree; a lone leaf has depth 1.
  std::uint32_t depth() const noexcept;
  // One more than the largest loose index, 0 when closed. A term is
  // well-scoped over n free variables iff loose() <= n.
  std::uint32_t loose() const noexcept;
  bool is_closed() const noexcept { return loose() == 0; }
  bool contains_h() const noexcept;
  std::size_t hash() const noexcept;

  friend bool operator==(const Term& a, const Term& b);

 private:
  explicit Term(detail::NodePtr node) : node_(std::move(node)) {}

  detail::NodePtr node_;
};

namespace detail {

struct Node {
  Term::Kind kind = Term::Kind::H;
  std::uint32_t index = 0;
  NodePtr left;
  NodePtr right;
  std::size_t size = 1;
  std::uint32_t loose = 0;
  bool has_h = false;
  std::size_t hash = 0;
  std::uint32_t depth = 1;
};

inline std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline const NodePtr& h_node() {
  static const NodePtr node = std::make_shared<const Node>(Node{Term::Kind::H, 0, nullptr, nullptr, 1, 0, true, 0x48, 1});
  return node;
}

inline bool equal_nodes(const Node* a, const Node* b) {
  // Walk the left spine iteratively; recursion only on the other child.
  while (true) {
    if (a == b) return true;
    if (a->hash != b->hash || a->size != b->size || a->kind != b->kind) return false;
    switch (a->kind) {
      case Term::Kind::H:
        return true;
      case Term::Kind::Var:
        return a->index == b->index;
      case Term::Kind::Abs:
        a = a->left.get();
        b = b->left.get();
        break;
      case Term::Kind::App:
        if (!equal_nodes(a->right.get(), b->right.get())) return false;
        a = a->left.get();
        b = b->left.get();
        break;
    }
  }
}

}  // namespace detail

inline Term::Term() : node_(detail::h_node()) {}

inline Term Term::var(std::uint32_t index) {
  return Term(std::make_shared<const detail::Node>(detail::Node{
      Kind::Var, index, nullptr, nullptr, 1, index + 1, false, detail::mix(0x56, index), 1}));
}

inline Term Term::abs(const Term& body) {
  const auto& b = *body.node_;
  return Term(std::make_shared<const detail::Node>(detail::Node{
      Kind::Abs, 0, body.node_, nullptr, b.size + 1, b.loose == 0 ? 0 : b.loose - 1, b.has_h,
      detail::mix(0x41, b.hash), b.depth + 1}));
}

inline Term Term::app(const Term& fun, const Term& arg) {
  const auto& f = *fun.node_;
  const auto& a = *arg.node_;
  return Term(std::make_shared<const detail::Node>(detail::Node{
      Kind::App, 0, fun.node_, arg.node_, f.size + a.size + 1, std::max(f.loose, a.loose),
      f.has_h || a.has_h, detail::mix(detail::mix(0x50, f.hash), a.hash),
      std::max(f.depth, a.depth) + 1}));
}

inline Term::Kind Term::kind() const noexcept { return node_->kind; }
inline std::uint32_t Term::index() const noexcept { return node_->index; }
inline Term Term::body() const noexcept { return Term(node_->left); }
inline Term Term::fun() const noexcept { return Term(node_->left); }
inline Term Term::arg() const noexcept { return Term(node_->right); }
inline std::size_t Term::size() const noexcept { return node_->size; }
inline std::uint32_t Term::depth() const noexcept { return node_->depth; }
inline std::uint32_t Term::loose() const noexcept { return node_->loose; }
inline bool Term::contains_h() const noexcept { return node_->has_h; }
inline std::size_t Term::hash() const noexcept { return node_->hash; }

inline bool operator==(const Term& a, const Term& b) {
  return detail::equal_nodes(a.node_.get(), b.node_.get());
}

// On de Bruijn terms alpha-equivalence is structural equality.
inline bool alpha_eq(const Term& a, const Term& b) { return a == b; }

inline bool well_scoped(const Term& t, std::uint32_t free_count) { return t.loose() <= free_count; }

// Convenience builders.
inline Term var(std::uint32_t index) { return Term::var(index); }
inline Term lam(const Term& body) { return Term::abs(body); }
inline Term h() { return Term::h(); }

inline Term lams(std::size_t binders, Term body) {
  for (std::size_t i = 0; i < binders; ++i) body = Term::abs(body);
  return body;
}

inline Term apply_all(Term fun, std::span<const Term> args) {
  for (const auto& a : args) fun = Term::app(fun, a);
  return fun;
}

template <class... Args>
Term app(const Term& fun, const Args&... args) {
  Term result = fun;
  ((result = Term::app(result, args)), ...);
  return result;
}

// Adds `delta` to every variable index >= cutoff.
inline Term shift(const Term& t, std::int64_t delta, std::uint32_t cutoff = 0) {
  if (delta == 0 || t.loose() <= cutoff) return t;
  switch (t.kind()) {
    case Term::Kind::Var:
      return Term::var(static_cast<std::uint32_t>(t.index() + delta));
    case Term::Kind::Abs:
      return Term::abs(shift(t.body(), delta, cutoff + 1));
    case Term::Kind::App:
      return Term::app(shift(t.fun(), delta, cutoff), shift(t.arg(), delta, cutoff));
    case Term::Kind::H:
      break;
  }
  return t;
}

namespace detail {

inline Term subst_at(const Term& t, std::uint32_t depth, const Term& value) {
  if (t.loose() <= depth) return t;
  switch (t.kind()) {
    case Term::Kind::Var:
      if (t.index() == depth) return shift(value, depth);
      return Term::var(t.index() - 1);
    case Term::Kind::Abs:
      return Term::abs(subst_at(t.body(), depth + 1, value));
    case Term::Kind::App:
      return Term::app(subst_at(t.fun(), depth, value), subst_at(t.arg(), depth, value));
    case Term::Kind::H:
      break;
  }
  return t;
}

}  // namespace detail

// body[value/x] where x is the variable bound by the abstraction whose body is
// `body` (index 0). Free variables of `value` are shifted under binders and
// the remaining loose indices of `body` drop by one.
inline Term substitute(const Term& body, const Term& value) { return detail::subst_at(body, 0, value); }

// t[m/H]. `m` must be closed, so no shifting is needed.
inline Term subst_const_H(const Term& t, const Term& m) {
  if (!m.is_closed()) throw NotClosed("subst_const_H: replacement term must be closed");
  std::function<Term(const Term&)> go = [&](const Term& u) -> Term {
    if (!u.contains_h()) return u;
    switch (u.kind()) {
      case Term::Kind::H:
        return m;
      case Term::Kind::Abs:
        return Term::abs(go(u.body()));
      case Term::Kind::App:
        return Term::app(go(u.fun()), go(u.arg()));
      case Term::Kind::Var:
        break;
    }
    return u;
  };
  return go(t);
}

// Spine decomposition  \x1..xn. head V1..Vk.
struct HeadVar {
  std::uint32_t index;
  friend bool operator==(const HeadVar&, const HeadVar&) = default;
};
struct HeadH {
  friend bool operator==(const HeadH&, const HeadH&) = default;
};
// The head redex (\x.U) V; `fun` is always an abstraction.
struct HeadRedex {
  Term fun;
  Term arg;
  friend bool operator==(const HeadRedex&, const HeadRedex&) = default;
};
using SpineHead = std::variant<HeadVar, HeadH, HeadRedex>;

struct SpineView {
  std::size_t binders = 0;
  SpineHead head;
  std::vector<Term> args;

  bool head_is_var() const { return std::holds_alternative<HeadVar>(head); }
  bool head_is_h() const { return std::holds_alternative<HeadH>(head); }
  bool head_is_redex() const { return std::holds_alternative<HeadRedex>(head); }
  // H with at least one argument: an I/J-redex.
  bool applied_h() const { return head_is_h() && !args.empty(); }
};

inline SpineView spine(const Term& t) {
  SpineView view;
  Term cur = t;
  while (cur.is_abs()) {
    ++view.binders;
    cur = cur.body();
  }
  std::vector<Term> reversed;
  while (cur.is_app()) {
    reversed.push_back(cur.arg());
    cur = cur.fun();
  }
  switch (cur.kind()) {
    case Term::Kind::Var:
      view.head = HeadVar{cur.index()};
      break;
    case Term::Kind::H:
      view.head = HeadH{};
      break;
    case Term::Kind::Abs:
      // After peeling the binder prefix an abstraction head always has an argument.
      view.head = HeadRedex{cur, reversed.back()};
      reversed.pop_back();
      break;
    case Term::Kind::App:
      break;
  }
  view.args.assign(reversed.rbegin(), reversed.rend());
  return view;
}

inline Term head_term(const SpineHead& head) {
  struct Visitor {
    Term operator()(const HeadVar& v) const { return Term::var(v.index); }
    Term operator()(const HeadH&) const { return Term::h(); }
    Term operator()(const HeadRedex& r) const { return Term::app(r.fun, r.arg); }
  };
  return std::visit(Visitor{}, head);
}

inline Term recompose(const SpineView& view) {
  return lams(view.binders, apply_all(head_term(view.head), view.args));
}

// Head normal form of the lambda-H calculus: \x. x V (any arguments) or
// \x. H (no arguments). An applied H is an I/J-redex, not a normal form.
inline bool is_hnf(const SpineView& view) {
  return view.head_is_var() || (view.head_is_h() && view.args.empty());
}

inline bool is_hnf(const Term& t) { return is_hnf(spine(t)); }

}  // namespace lambdah

template <>
struct std::hash<lambdah::Term> {
  std::size_t operator()(const lambdah::Term& t) const noexcept { return t.hash(); }
};

#endif  // LAMBDAH_TERM_HPP
