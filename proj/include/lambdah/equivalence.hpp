#ifndef LAMBDAH_EQUIVALENCE_HPP
#define LAMBDAH_EQUIVALENCE_HPP

// Checks that an I-run and a J-run of the same context behave alike:
// lockstep comparison of E-images, solvability agreement between C[I] and
// C[J], and the lifting of J-traces through extra arguments.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lambdah/error.hpp"
#include "lambdah/extraction.hpp"
#include "lambdah/machines.hpp"
#include "lambdah/term.hpp"

namespace lambdah {

using Extractor = std::function<Term(const Term&)>;

// -- lockstep ---------------------------------------------------------------

struct Checkpoint {
  std::size_t t_step_index = 0;
  Term e_image_i;
  Term e_image_j;
  bool equal = true;
};

enum class LockstepVerdict {
  BothHnf,      // both machines reached a head normal form
  BothRunning,  // budget spent, every checkpoint equal
  Diverged,     // one side halted, the other did not within the remaining budget
  EMismatch,    // E-images differ at some checkpoint
};

inline const char* to_string(LockstepVerdict v) {
  switch (v) {
    case LockstepVerdict::BothHnf:
      return "both_hnf";
    case LockstepVerdict::BothRunning:
      return "both_running";
    case LockstepVerdict::Diverged:
      return "diverged";
    case LockstepVerdict::EMismatch:
      return "e_mismatch";
  }
  return "?";
}

struct LockstepReport {
  Term input_i;
  Term input_j;
  std::vector<Checkpoint> checkpoints;
  LockstepVerdict verdict = LockstepVerdict::BothRunning;
  std::size_t verdict_step = 0;  // checkpoint of the Diverged/EMismatch event
  std::optional<std::size_t> hnf_t_steps_i;
  std::optional<std::size_t> hnf_t_steps_j;
  bool space_limited = false;  // stopped early because a state exceeded kMaxTermSize or kMaxTermDepth

  bool passed() const { return verdict == LockstepVerdict::BothHnf || verdict == LockstepVerdict::BothRunning; }
};

// Runs the IT machine from `u_i` and the JT machine from `u_j`, pausing after
// every t-step (k = 0 .. max_t) to compare E-images. The inputs must have
// equal E-images; lockstep(u) runs both from the same term.
inline LockstepReport lockstep_pair(const Term& u_i, const Term& u_j, std::size_t max_t,
                                    std::size_t cap_aux = kAutoAuxCap, const Extractor& e = extract) {
  LockstepReport report;
  report.input_i = u_i;
  report.input_j = u_j;
  Machine mi(u_i, Strategy::IT, cap_aux);
  Machine mj(u_j, Strategy::JT, cap_aux);

  auto checkpoint = [&](std::size_t k) {
    Checkpoint c{k, e(mi.state()), e(mj.state()), false};
    c.equal = c.e_image_i == c.e_image_j;
    report.checkpoints.push_back(std::move(c));
    return report.checkpoints.back().equal;
  };

  bool halted_i = mi.settle();
  bool halted_j = mj.settle();
  if (!checkpoint(0)) {
    report.verdict = LockstepVerdict::EMismatch;
    return report;
  }
  for (std::size_t k = 0;; ++k) {
    if (halted_i) report.hnf_t_steps_i = k;
    if (halted_j) report.hnf_t_steps_j = k;
    if (halted_i && halted_j) {
      report.verdict = LockstepVerdict::BothHnf;
      return report;
    }
    if (halted_i != halted_j) {
      // One side is done; give the other the rest of the budget.
      Machine& other = halted_i ? mj : mi;
      for (std::size_t extra = k; extra < max_t; ++extra) {
        other.step_t();
        if (other.oversized()) {
          report.space_limited = true;
          break;
        }
        if (other.settle()) {
          (halted_i ? report.hnf_t_steps_j : report.hnf_t_steps_i) = extra + 1;
          report.verdict = LockstepVerdict::BothHnf;
          return report;
        }
      }
      report.verdict = LockstepVerdict::Diverged;
      report.verdict_step = k;
      return report;
    }
    if (k == max_t) {
      report.verdict = LockstepVerdict::BothRunning;
      return report;
    }
    mi.step_t();
    mj.step_t();
    if (!checkpoint(k + 1)) {
      report.verdict = LockstepVerdict::EMismatch;
      report.verdict_step = k + 1;
      return report;
    }
    if (mi.oversized() || mj.oversized()) {
      report.space_limited = true;
      report.verdict = LockstepVerdict::BothRunning;
      return report;
    }
    halted_i = mi.settle();
    halted_j = mj.settle();
  }
}

inline LockstepReport lockstep(const Term& u, std::size_t max_t, std::size_t cap_aux = kAutoAuxCap,
                               const Extractor& e = extract) {
  return lockstep_pair(u, u, max_t, cap_aux, e);
}

// -- solvability agreement ----------------------------------------------------

// THead runs on U[I/H] and U[J/H] get this multiple of the machine fuel.
inline constexpr std::size_t kSubstFuelRatio = 20;
// A one-sided result counts as a disagreement only if the side that ran out
// of fuel had at least this many times the t-steps the other side needed.
inline constexpr std::size_t kReviewRatio = 10;

struct VerdictSummary {
  bool hnf = false;
  std::size_t t_steps = 0;
  std::size_t fuel = 0;

  // A run cut short by the size limit only counts the t-steps it actually took.
  static VerdictSummary of(const MachineOutcome& o, std::size_t fuel) {
    return {o.hnf(), o.t_steps, o.hnf() ? fuel : std::min(fuel, o.t_steps)};
  }
};

enum class Agreement {
  BothHnf,      // definite and equal
  BothUnknown,  // vacuous
  OneSided,     // one side hnf, the other ran out of a budget too small to judge
  Disagree,     // one side hnf, the other ran out of an ample budget
};

inline const char* to_string(Agreement a) {
  switch (a) {
    case Agreement::BothHnf:
      return "both_hnf";
    case Agreement::BothUnknown:
      return "both_unknown";
    case Agreement::OneSided:
      return "one_sided";
    case Agreement::Disagree:
      return "disagree";
  }
  return "?";
}

inline Agreement compare_verdicts(const VerdictSummary& a, const VerdictSummary& b) {
  if (a.hnf && b.hnf) return Agreement::BothHnf;
  if (!a.hnf && !b.hnf) return Agreement::BothUnknown;
  const VerdictSummary& done = a.hnf ? a : b;
  const VerdictSummary& stuck = a.hnf ? b : a;
  return stuck.fuel >= kReviewRatio * std::max<std::size_t>(done.t_steps, 1) ? Agreement::Disagree
                                                                              : Agreement::OneSided;
}

struct AgreementRow {
  Term context;
  VerdictSummary verdict_i;   // THead on U[I/H]
  VerdictSummary verdict_j;   // THead on U[J/H]
  VerdictSummary verdict_it;  // IT machine on U
  VerdictSummary verdict_jt;  // JT machine on U
  Agreement theorem = Agreement::BothUnknown;   // verdict_i vs verdict_j
  Agreement bridge_i = Agreement::BothUnknown;  // verdict_it vs verdict_i
  Agreement bridge_j = Agreement::BothUnknown;  // verdict_jt vs verdict_j
  bool agree = true;

  bool bridges_hold() const { return bridge_i != Agreement::Disagree && bridge_j != Agreement::Disagree; }
};

// `u` encodes a context: every H is a hole, so U[M/H] = C[M] for closed M.
// The IT/JT machines get `fuel`; the substituted head reductions get
// kSubstFuelRatio * fuel since each J-step costs several beta steps.
inline AgreementRow theorem_check(const Term& u, std::size_t fuel, std::size_t cap_aux = kAutoAuxCap) {
  AgreementRow row;
  row.context = u;
  const std::size_t subst_fuel = kSubstFuelRatio * fuel;
  row.verdict_i = VerdictSummary::of(solvable(subst_const_H(u, make_I()), subst_fuel), subst_fuel);
  row.verdict_j = VerdictSummary::of(solvable(subst_const_H(u, make_J()), subst_fuel), subst_fuel);
  row.verdict_it = VerdictSummary::of(run(u, Strategy::IT, fuel, cap_aux), fuel);
  row.verdict_jt = VerdictSummary::of(run(u, Strategy::JT, fuel, cap_aux), fuel);
  row.theorem = compare_verdicts(row.verdict_i, row.verdict_j);
  row.bridge_i = compare_verdicts(row.verdict_it, row.verdict_i);
  row.bridge_j = compare_verdicts(row.verdict_jt, row.verdict_j);
  row.agree = row.theorem != Agreement::Disagree;
  return row;
}

// -- lifting J-traces through arguments -----------------------------------

struct LiftWitness {
  std::vector<TraceEntry> original_trace;  // U ->J* V
  std::vector<Term> args;                  // W
  std::vector<TraceEntry> lifted_trace;    // U W ->J* V W'
  std::vector<Term> primed_args;           // W'
  std::vector<std::vector<TraceEntry>> residual_traces;  // W'_k ->J* W_k
};

namespace detail {

inline bool is_j_kind(StepKind k) { return k == StepKind::JWrap || k == StepKind::JDrop; }

// Checks that `trace` is a chain of head J-steps starting at `start`.
inline void replay_j_trace(const std::vector<TraceEntry>& trace, std::optional<Term> start, const char* what) {
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceEntry& entry = trace[i];
    const std::string where = std::string(what) + " step " + std::to_string(i);
    if (!is_j_kind(entry.kind)) throw InvalidTrace(where + ": not a J-step");
    if (i == 0 && start && !(entry.before == *start)) throw InvalidTrace(where + ": does not start at the given term");
    if (i > 0 && !(entry.before == trace[i - 1].after)) throw InvalidTrace(where + ": does not continue the trace");
    try {
      if (j_step_kind(entry.before) != entry.kind || !(j_step(entry.before) == entry.after)) {
        throw InvalidTrace(where + ": does not match the J-rule");
      }
    } catch (const NotAJRedex&) {
      throw InvalidTrace(where + ": no applied H at the head");
    }
  }
}

}  // namespace detail

// Re-checks every trace in a witness against the J-rule. Throws InvalidTrace.
inline void validate(const LiftWitness& w);

// Given U ->J* V and arguments W1..Wn, builds U W ->J* V W' with W'_k ->J* W_k.
// Wrap steps lift unchanged. A Drop step H U' -> U' taken with a pending first
// argument W1 becomes the Wrap step H U' W1 .. -> U' (H W1) .., replacing W1
// by H W1, whose residual is the Drop step H W1 -> W1. The steps of U must be
// at the top level (no binder prefix); a binder would turn U W into a beta
// redex.
inline LiftWitness lift_j_trace(const std::vector<TraceEntry>& trace, const std::vector<Term>& args) {
  detail::replay_j_trace(trace, std::nullopt, "input");
  LiftWitness w;
  w.original_trace = trace;
  w.args = args;
  w.primed_args = args;
  std::vector<std::size_t> wraps(args.size(), 0);

  for (const TraceEntry& entry : trace) {
    if (entry.before.is_abs()) throw InvalidTrace("lift_j_trace: step under a binder cannot be lifted");
    const Term lifted_before = apply_all(entry.before, w.primed_args);
    if (entry.kind == StepKind::JDrop && !w.primed_args.empty()) {
      w.primed_args[0] = Term::app(Term::h(), w.primed_args[0]);
      ++wraps[0];
      w.lifted_trace.push_back({StepKind::JWrap, lifted_before, apply_all(entry.after, w.primed_args), 0});
    } else {
      w.lifted_trace.push_back({entry.kind, lifted_before, apply_all(entry.after, w.primed_args), 0});
    }
  }

  for (std::size_t k = 0; k < args.size(); ++k) {
    std::vector<TraceEntry> residual;
    Term cur = w.primed_args[k];
    for (std::size_t i = 0; i < wraps[k]; ++i) {
      Term next = j_step(cur);
      residual.push_back({StepKind::JDrop, cur, next, 0});
      cur = next;
    }
    w.residual_traces.push_back(std::move(residual));
  }

  validate(w);
  return w;
}

inline void validate(const LiftWitness& w) {
  if (w.primed_args.size() != w.args.size()) throw InvalidTrace("witness: argument count changed");
  if (w.residual_traces.size() != w.args.size()) throw InvalidTrace("witness: residual count mismatch");
  detail::replay_j_trace(w.original_trace, std::nullopt, "original");
  if (!w.original_trace.empty()) {
    detail::replay_j_trace(w.lifted_trace, apply_all(w.original_trace.front().before, w.args), "lifted");
    if (!(w.lifted_trace.back().after == apply_all(w.original_trace.back().after, w.primed_args))) {
      throw InvalidTrace("witness: lifted trace does not end at V W'");
    }
  } else if (!w.lifted_trace.empty()) {
    throw InvalidTrace("witness: lifted trace for an empty trace");
  }
  for (std::size_t k = 0; k < w.args.size(); ++k) {
    const auto& residual = w.residual_traces[k];
    detail::replay_j_trace(residual, w.primed_args[k], "residual");
    const Term& end = residual.empty() ? w.primed_args[k] : residual.back().after;
    if (!(end == w.args[k])) throw InvalidTrace("witness: residual " + std::to_string(k) + " does not reach W");
  }
}

}  // namespace lambdah

#endif  // LAMBDAH_EQUIVALENCE_HPP
