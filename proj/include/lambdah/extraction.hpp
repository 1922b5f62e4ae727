#ifndef LAMBDAH_EXTRACTION_HPP
#define LAMBDAH_EXTRACTION_HPP

#include <string>
#include <vector>

#include "lambdah/error.hpp"
#include "lambdah/term.hpp"

namespace lambdah {

// The extraction function E. It erases every H that sits at the head of an
// application spine:
//
//   E(x) = x    E(H) = H    E(\x.U) = \x.E(U)
//   E(U V) = E(U) E(V)          if the spine head of (U V) is not H
//   E(H U1 .. Un) = E(U1 .. Un)  for n >= 1
//
// A bare H (no arguments) survives. The free context is preserved.
inline Term extract(const Term& t) {
  if (!t.contains_h()) return t;
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::H:
      return t;
    case Term::Kind::Abs:
      return Term::abs(extract(t.body()));
    case Term::Kind::App:
      break;
  }
  // Arguments are kept innermost-last so the first argument is at the back.
  std::vector<Term> pending;
  Term head = t;
  while (true) {
    while (head.is_app()) {
      pending.push_back(head.arg());
      head = head.fun();
    }
    if (!head.is_h() || pending.empty()) break;
    head = pending.back();
    pending.pop_back();
  }
  Term result = head.is_abs() ? Term::abs(extract(head.body())) : head;
  for (auto it = pending.rbegin(); it != pending.rend(); ++it) result = Term::app(result, extract(*it));
  return result;
}

// Shapes of an E-image.
enum class EShape {
  LambdaH,          // \x. H
  LambdaVarApps,    // \x. x V
  LambdaRedexApps,  // \x. (\y.U) V W
};

inline const char* to_string(EShape shape) {
  switch (shape) {
    case EShape::LambdaH:
      return "lambda-H";
    case EShape::LambdaVarApps:
      return "lambda-var-apps";
    case EShape::LambdaRedexApps:
      return "lambda-redex-apps";
  }
  return "?";
}

// Throws ShapeViolation if `e` has none of the three shapes, i.e. its head is
// an applied H.
inline EShape classify(const Term& e) {
  const SpineView view = spine(e);
  if (view.head_is_var()) return EShape::LambdaVarApps;
  if (view.head_is_redex()) return EShape::LambdaRedexApps;
  if (view.args.empty()) return EShape::LambdaH;
  throw ShapeViolation("E-image has an applied H at its head");
}

// True if some application node anywhere in `t` has a spine head equal to H.
// E-images never do.
inline bool has_applied_h(const Term& t) {
  if (!t.contains_h()) return false;
  switch (t.kind()) {
    case Term::Kind::Abs:
      return has_applied_h(t.body());
    case Term::Kind::App: {
      Term head = t;
      while (head.is_app()) {
        if (has_applied_h(head.arg())) return true;
        head = head.fun();
      }
      if (head.is_h()) return true;
      return head.is_abs() && has_applied_h(head.body());
    }
    default:
      return false;
  }
}

}  // namespace lambdah

#endif  // LAMBDAH_EXTRACTION_HPP
