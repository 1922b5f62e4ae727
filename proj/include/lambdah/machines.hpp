#ifndef LAMBDAH_MACHINES_HPP
#define LAMBDAH_MACHINES_HPP

// Head reduction (t-steps), the I- and J-rules for an applied H at the head,
// fuel-bounded machines combining them, and the closed combinators I, G, Y, J.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lambdah/error.hpp"
#include "lambdah/term.hpp"

namespace lambdah {

enum class StepKind {
  T,      // head beta
  I,      // \x. H U1 U2 .. Un -> \x. U1 U2 .. Un
  JWrap,  // \x. H U1 U2 U3 .. Un -> \x. U1 (H U2) U3 .. Un   (n >= 2)
  JDrop,  // \x. H U1 -> \x. U1
};

inline const char* to_string(StepKind kind) {
  switch (kind) {
    case StepKind::T:
      return "t";
    case StepKind::I:
      return "i";
    case StepKind::JWrap:
      return "j_wrap";
    case StepKind::JDrop:
      return "j_drop";
  }
  return "?";
}

struct TraceEntry {
  StepKind kind;
  Term before;
  Term after;
  std::size_t t_steps = 0;  // t-steps performed up to and including this entry
};

enum class Strategy {
  THead,  // plain head reduction; an applied H is a stuck head
  IT,     // I-steps eagerly, otherwise one t-step
  JT,     // J-steps eagerly, otherwise one t-step
  PureI,  // I-steps only
  PureJ,  // J-steps only
};

inline const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::THead:
      return "t";
    case Strategy::IT:
      return "it";
    case Strategy::JT:
      return "jt";
    case Strategy::PureI:
      return "i";
    case Strategy::PureJ:
      return "j";
  }
  return "?";
}

inline std::optional<Strategy> parse_strategy(std::string_view name) {
  if (name == "t") return Strategy::THead;
  if (name == "it") return Strategy::IT;
  if (name == "jt") return Strategy::JT;
  if (name == "i") return Strategy::PureI;
  if (name == "j") return Strategy::PureJ;
  return std::nullopt;
}

// -- single steps -----------------------------------------------------------

inline Term t_step(const Term& t) {
  SpineView view = spine(t);
  const auto* redex = std::get_if<HeadRedex>(&view.head);
  if (redex == nullptr) throw NotATRedex("t_step: term has no head redex");
  return lams(view.binders, apply_all(substitute(redex->fun.body(), redex->arg), view.args));
}

inline Term i_step(const Term& t) {
  SpineView view = spine(t);
  if (!view.applied_h()) throw NotAnIRedex("i_step: head is not an applied H");
  Term head = view.args.front();
  return lams(view.binders, apply_all(head, std::span<const Term>(view.args).subspan(1)));
}

// JWrap or JDrop; throws NotAJRedex if the head is not an applied H.
inline StepKind j_step_kind(const Term& t) {
  SpineView view = spine(t);
  if (!view.applied_h()) throw NotAJRedex("j_step: head is not an applied H");
  return view.args.size() == 1 ? StepKind::JDrop : StepKind::JWrap;
}

inline Term j_step(const Term& t) {
  SpineView view = spine(t);
  if (!view.applied_h()) throw NotAJRedex("j_step: head is not an applied H");
  Term result = view.args[0];
  if (view.args.size() >= 2) {
    result = Term::app(result, Term::app(Term::h(), view.args[1]));
    result = apply_all(result, std::span<const Term>(view.args).subspan(2));
  }
  return lams(view.binders, result);
}

// -- machines ---------------------------------------------------------------

// Passing this as the aux-step cap means 10 * size of the term at the start
// of each run of consecutive I/J-steps.
inline constexpr std::size_t kAutoAuxCap = 0;

// Runs also stop as FuelExhausted once the term outgrows these bounds: eager
// J-normalisation can double the term on every t-step (H (\x.x x) (\x.x x)
// does), so fuel alone does not bound the work. The depth bound keeps the
// recursive traversals well inside the stack.
inline constexpr std::size_t kMaxTermSize = std::size_t{1} << 20;
inline constexpr std::uint32_t kMaxTermDepth = 1u << 12;

struct MachineOutcome {
  enum class Status { Hnf, FuelExhausted };

  Status status = Status::Hnf;
  // The terminal term when status is Hnf, the last state otherwise.
  Term term;
  std::size_t t_steps = 0;
  std::size_t aux_steps = 0;
  std::optional<std::vector<TraceEntry>> trace;

  bool hnf() const { return status == Status::Hnf; }
  bool exhausted() const { return status == Status::FuelExhausted; }
};

// A stepwise machine for one strategy. settle() performs the eager I/J-steps
// (for IT/JT/PureI/PureJ) and reports whether the state is terminal; step_t()
// performs one head beta step. run() drives the two.
class Machine {
 public:
  Machine(Term start, Strategy strategy, std::size_t cap_aux = kAutoAuxCap, bool keep_trace = false)
      : state_(std::move(start)), strategy_(strategy), cap_aux_(cap_aux), keep_trace_(keep_trace) {}

  const Term& state() const { return state_; }
  Strategy strategy() const { return strategy_; }
  std::size_t t_steps() const { return t_steps_; }
  std::size_t aux_steps() const { return aux_steps_; }
  const std::vector<TraceEntry>& trace() const { return trace_; }
  bool oversized() const { return state_.size() > kMaxTermSize || state_.depth() > kMaxTermDepth; }

  // Throws AuxCapExceeded.
  bool settle() {
    if (strategy_ != Strategy::THead) {
      const std::size_t cap = cap_aux_ == kAutoAuxCap ? 10 * state_.size() : cap_aux_;
      std::size_t consecutive = 0;
      const bool i_rule = strategy_ == Strategy::IT || strategy_ == Strategy::PureI;
      while (spine(state_).applied_h()) {
        if (++consecutive > cap) {
          throw AuxCapExceeded("more than " + std::to_string(cap) + " consecutive " + (i_rule ? "I" : "J") +
                               "-steps");
        }
        const StepKind kind = i_rule ? StepKind::I : j_step_kind(state_);
        record(kind, i_rule ? i_step(state_) : j_step(state_));
        ++aux_steps_;
      }
      if (strategy_ == Strategy::PureI || strategy_ == Strategy::PureJ) return true;
    }
    return !spine(state_).head_is_redex();
  }

  void step_t() {
    Term next = t_step(state_);
    ++t_steps_;
    record(StepKind::T, std::move(next));
  }

  MachineOutcome outcome(MachineOutcome::Status status) const {
    MachineOutcome out;
    out.status = status;
    out.term = state_;
    out.t_steps = t_steps_;
    out.aux_steps = aux_steps_;
    if (keep_trace_) out.trace = trace_;
    return out;
  }

 private:
  void record(StepKind kind, Term next) {
    if (keep_trace_) trace_.push_back({kind, state_, next, t_steps_});
    state_ = std::move(next);
  }

  Term state_;
  Strategy strategy_;
  std::size_t cap_aux_;
  bool keep_trace_;
  std::size_t t_steps_ = 0;
  std::size_t aux_steps_ = 0;
  std::vector<TraceEntry> trace_;
};

// Runs `t` until it is terminal for `strategy`, `fuel` t-steps have been
// spent, or the term exceeds kMaxTermSize or kMaxTermDepth. THead stops at any head that is not a beta redex; IT/JT stop at a
// lambda-H head normal form; PureI/PureJ stop once the head is no longer an
// applied H and ignore fuel.
inline MachineOutcome run(const Term& t, Strategy strategy, std::size_t fuel, std::size_t cap_aux = kAutoAuxCap,
                          bool keep_trace = false) {
  Machine m(t, strategy, cap_aux, keep_trace);
  while (true) {
    if (m.settle()) return m.outcome(MachineOutcome::Status::Hnf);
    if (m.t_steps() >= fuel) return m.outcome(MachineOutcome::Status::FuelExhausted);
    m.step_t();
    if (m.oversized()) return m.outcome(MachineOutcome::Status::FuelExhausted);
  }
}

// Plain head reduction. FuelExhausted means "unknown", not "unsolvable".
inline MachineOutcome solvable(const Term& t, std::size_t fuel) { return run(t, Strategy::THead, fuel); }

// -- combinators --------------------------------------------------------------

// \x.x
inline Term make_I() { return lam(var(0)); }

// \x y z. y (x z)
inline Term make_G() { return lam(lam(lam(app(var(1), app(var(2), var(0)))))); }

// Turing's fixed point combinator A A with A = \z f. f (z z f).
inline Term make_Y() {
  const Term a = lam(lam(app(var(0), app(var(1), var(1), var(0)))));
  return app(a, a);
}

// Y G, the infinite eta-expansion of I.
inline Term make_J() { return app(make_Y(), make_G()); }

inline Term make_omega() {
  const Term w = lam(app(var(0), var(0)));
  return app(w, w);
}

// Named constants understood by the CLI: I, J, Y, G, Omega.
inline std::optional<Term> builtin_constant(std::string_view name) {
  if (name == "I") return make_I();
  if (name == "J") return make_J();
  if (name == "Y") return make_Y();
  if (name == "G") return make_G();
  if (name == "Omega") return make_omega();
  return std::nullopt;
}

}  // namespace lambdah

#endif  // LAMBDAH_MACHINES_HPP
