#ifndef LAMBDAH_LEMMA_SUITE_HPP
#define LAMBDAH_LEMMA_SUITE_HPP

// Runs every executable property of E and the machines over a corpus and
// tabulates passes, vacuous cases and counterexamples.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lambdah/equivalence.hpp"
#include "lambdah/extraction.hpp"
#include "lambdah/gen.hpp"
#include "lambdah/machines.hpp"
#include "lambdah/syntax.hpp"
#include "lambdah/term.hpp"

namespace lambdah {

enum SuiteGroup : unsigned {
  kSuiteExtraction = 1u << 0,  // shape, idempotence, application collapse, substitution, congruence
  kSuiteSteps = 1u << 1,       // I/J invariance, termination, paired t-steps
  kSuiteLockstep = 1u << 2,
  kSuiteBridges = 1u << 3,     // IT vs U[I/H], JT vs U[J/H], I vs J
  kSuiteLift = 1u << 4,
  kSuiteHeadApp = 1u << 5,     // (U V) solvable iff (U' V) solvable for U ->t* U'
  kSuiteAll = (1u << 6) - 1,
};

inline std::optional<unsigned> parse_suite(std::string_view name) {
  if (name == "all") return kSuiteAll;
  if (name == "extraction") return kSuiteExtraction;
  if (name == "steps") return kSuiteSteps;
  if (name == "lockstep") return kSuiteLockstep;
  if (name == "bridges") return kSuiteBridges;
  if (name == "lift") return kSuiteLift;
  if (name == "head-app") return kSuiteHeadApp;
  return std::nullopt;
}

struct SuiteOptions {
  unsigned groups = kSuiteAll;
  std::size_t max_t = 100;
  std::size_t bridge_fuel = 200;
  std::size_t head_app_fuel = 200;
  std::size_t counterexample_limit = 5;
  std::uint64_t seed = 0;  // for the E-equal pairs derived from each term
  Extractor extractor = extract;
};

struct CheckResult {
  std::string name;
  std::string property;
  std::size_t checked = 0;
  std::size_t vacuous = 0;
  std::size_t failures = 0;
  std::vector<std::string> counterexamples;

  bool passed() const { return failures == 0; }
};

struct SuiteReport {
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed()) return false;
    }
    return true;
  }
  const CheckResult* find(std::string_view name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

// Closed terms used as substitution values and extra arguments.
inline std::vector<Term> probe_values() {
  const Term i = make_I();
  return {
      h(),
      i,
      lam(app(h(), var(0))),
      app(h(), i),
      lam(app(var(0), var(0))),
      lam(lam(app(h(), var(1), app(h(), var(0))))),
  };
}

namespace detail {

class SuiteRunner {
 public:
  explicit SuiteRunner(const SuiteOptions& options) : opt_(options), values_(probe_values()) {
    auto add = [&](unsigned group, const char* name, const char* property) {
      if (opt_.groups & group) index_.push_back({name, add_check(name, property)});
    };
    add(kSuiteExtraction, "shape", "E(T) is \\x.H, \\x.x V or \\x.(\\y.U) V W");
    add(kSuiteExtraction, "idempotence", "E(E(T)) = E(T)");
    add(kSuiteExtraction, "no_applied_h", "no application in E(T) has H at its head");
    add(kSuiteExtraction, "app_collapse", "E(T U) = E(E(T) E(U))");
    add(kSuiteExtraction, "substitution", "E(U[V/x]) = E(E(U)[E(V)/x])");
    add(kSuiteExtraction, "congruence", "E(U1)=E(U2), E(V1)=E(V2) => E(U1[V1/x]) = E(U2[V2/x])");
    add(kSuiteSteps, "i_step_invariance", "U ->I V => E(U) = E(V)");
    add(kSuiteSteps, "j_step_invariance", "U ->J V => E(U) = E(V)");
    add(kSuiteSteps, "pure_i_size_decrease", "every I-step removes exactly two nodes");
    add(kSuiteSteps, "pure_j_termination", "J-reduction stops within 10 * size steps");
    add(kSuiteSteps, "paired_t_steps", "E(U1)=E(U2), U1 ->t V1, U2 ->t V2 => E(V1) = E(V2)");
    add(kSuiteLockstep, "lockstep", "E-images agree after every t-step of the IT and JT runs");
    add(kSuiteLockstep, "lockstep_pairs", "same, from distinct terms with equal E-images");
    add(kSuiteBridges, "bridge_i", "IT-solvable(U) iff U[I/H] solvable");
    add(kSuiteBridges, "bridge_j", "JT-solvable(U) iff U[J/H] solvable");
    add(kSuiteBridges, "theorem", "U[I/H] solvable iff U[J/H] solvable");
    add(kSuiteLift, "lift_replay", "U ->J* V lifts to U W ->J* V W' with W' ->J* W");
    add(kSuiteHeadApp, "head_app_solvability", "U ->t* U' hnf => (U V) solvable iff (U' V) solvable");
  }

  void visit(const Term& t, std::size_t ordinal) {
    TermGenerator gen(GenConfig{opt_.seed ^ (0x9e3779b97f4a7c15ULL * (ordinal + 1)), 1, 0, 0.3});
    if (opt_.groups & kSuiteExtraction) extraction_checks(t, gen);
    if (opt_.groups & kSuiteSteps) step_checks(t, gen);
    if (opt_.groups & kSuiteLockstep) lockstep_checks(t, gen);
    if (opt_.groups & kSuiteBridges) bridge_checks(t);
    if (opt_.groups & kSuiteLift) lift_checks(t);
    if (opt_.groups & kSuiteHeadApp) head_app_checks(t);
  }

  SuiteReport take() { return std::move(report_); }

 private:
  std::size_t add_check(const char* name, const char* property) {
    CheckResult c;
    c.name = name;
    c.property = property;
    report_.checks.push_back(std::move(c));
    return report_.checks.size() - 1;
  }

  CheckResult& check(std::string_view name) {
    for (const auto& [n, i] : index_) {
      if (n == name) return report_.checks[i];
    }
    throw Error("unknown check " + std::string(name));
  }

  void pass(std::string_view name) { ++check(name).checked; }
  void vacuous(std::string_view name) {
    auto& c = check(name);
    ++c.checked;
    ++c.vacuous;
  }
  void fail(std::string_view name, const std::string& detail) {
    auto& c = check(name);
    ++c.checked;
    ++c.failures;
    if (c.counterexamples.size() < opt_.counterexample_limit) c.counterexamples.push_back(detail);
  }
  void expect(std::string_view name, bool ok, const std::function<std::string()>& detail) {
    if (ok) {
      pass(name);
    } else {
      fail(name, detail());
    }
  }

  Term E(const Term& t) const { return opt_.extractor(t); }

  static std::string show(const Term& t) { return print(t); }

  // Applied-H candidates derived from t.
  std::vector<Term> h_candidates(const Term& t) const {
    std::vector<Term> out;
    if (spine(t).applied_h()) out.push_back(t);
    out.push_back(app(h(), t));
    out.push_back(app(h(), t, t));
    out.push_back(app(h(), t, values_[1], t));
    return out;
  }

  void extraction_checks(const Term& t, TermGenerator& gen) {
    const Term e = E(t);
    bool shaped = true;
    try {
      classify(e);
    } catch (const ShapeViolation&) {
      shaped = false;
    }
    expect("shape", shaped, [&] { return show(t) + "  E = " + show(e); });
    expect("idempotence", E(e) == e, [&] { return show(t); });
    expect("no_applied_h", !has_applied_h(e), [&] { return show(t) + "  E = " + show(e); });

    // T U for every split of t's top-level spine, and t applied to probe values.
    auto collapse = [&](const Term& fun, std::span<const Term> args) {
      std::vector<Term> e_args;
      for (const auto& a : args) e_args.push_back(E(a));
      const Term lhs = E(apply_all(fun, args));
      const Term rhs = E(apply_all(E(fun), e_args));
      expect("app_collapse", lhs == rhs, [&] { return show(apply_all(fun, args)) + "  split after " + show(fun); });
    };
    std::vector<Term> args;
    Term head = t;
    while (head.is_app()) {
      args.insert(args.begin(), head.arg());
      head = head.fun();
    }
    for (std::size_t j = 0; j < args.size(); ++j) {
      collapse(apply_all(head, std::span<const Term>(args).first(j)), std::span<const Term>(args).subspan(j));
    }
    collapse(t, std::span<const Term>(values_).first(1));
    collapse(t, std::span<const Term>(values_).subspan(2, 2));

    // Substitution: bodies of t and of its beta redexes, against probe values
    // and (for t = \x.U) against t itself.
    std::vector<std::pair<Term, Term>> instances;
    if (t.is_abs()) {
      instances.emplace_back(t.body(), t);
      for (const auto& v : values_) instances.emplace_back(t.body(), v);
    }
    collect_redexes(t, instances);
    if (instances.empty()) vacuous("substitution");
    for (const auto& [u, v] : instances) {
      const Term lhs = E(substitute(u, v));
      const Term rhs = E(substitute(E(u), E(v)));
      expect("substitution", lhs == rhs, [&] { return "U = " + show(lam(u)) + "  V = " + show(v); });

      const Term u1 = gen.wrap(u);
      const Term u2 = gen.wrap(u);
      const Term v1 = gen.wrap(v);
      const Term v2 = gen.wrap(v);
      if (!(E(u1) == E(u2)) || !(E(v1) == E(v2))) {
        fail("congruence", "hypothesis broken by pair generator for " + show(lam(u)));
        continue;
      }
      expect("congruence", E(substitute(u1, v1)) == E(substitute(u2, v2)),
             [&] { return "U1 = " + show(lam(u1)) + "  U2 = " + show(lam(u2)) + "  V1 = " + show(v1) + "  V2 = " + show(v2); });
    }
  }

  // Bodies and arguments of beta redexes inside t whose argument is closed
  // relative to the redex position; only closed redexes keep the pair
  // well-scoped without shifting.
  static void collect_redexes(const Term& t, std::vector<std::pair<Term, Term>>& out) {
    switch (t.kind()) {
      case Term::Kind::Abs:
        collect_redexes(t.body(), out);
        break;
      case Term::Kind::App:
        if (t.fun().is_abs() && t.arg().is_closed() && t.fun().is_closed()) out.emplace_back(t.fun().body(), t.arg());
        collect_redexes(t.fun(), out);
        collect_redexes(t.arg(), out);
        break;
      default:
        break;
    }
  }

  void step_checks(const Term& t, TermGenerator& gen) {
    for (const Term& c : h_candidates(t)) {
      const Term e = E(c);
      const Term vi = i_step(c);
      expect("i_step_invariance", E(vi) == e, [&] { return show(c) + "  ->I " + show(vi); });
      const Term vj = j_step(c);
      expect("j_step_invariance", E(vj) == e, [&] { return show(c) + "  ->J " + show(vj); });

      Term cur = c;
      bool decreasing = true;
      while (spine(cur).applied_h()) {
        Term next = i_step(cur);
        if (next.size() + 2 != cur.size()) {
          decreasing = false;
          break;
        }
        cur = next;
      }
      expect("pure_i_size_decrease", decreasing, [&] { return show(c); });

      bool terminated = true;
      try {
        run(c, Strategy::PureJ, 0, 10 * c.size());
      } catch (const AuxCapExceeded&) {
        terminated = false;
      }
      expect("pure_j_termination", terminated, [&] { return show(c); });
    }

    const Term u1 = run(gen.wrap(t), Strategy::PureI, 0).term;
    const Term u2 = run(gen.wrap(t), Strategy::PureJ, 0).term;
    if (!(E(u1) == E(u2))) {
      fail("paired_t_steps", "hypothesis E(U1)=E(U2) broken for " + show(u1) + " / " + show(u2));
    } else if (!spine(u1).head_is_redex() || !spine(u2).head_is_redex()) {
      vacuous("paired_t_steps");
    } else {
      expect("paired_t_steps", E(t_step(u1)) == E(t_step(u2)),
             [&] { return "U1 = " + show(u1) + "  U2 = " + show(u2); });
    }
  }

  static std::string describe(const LockstepReport& r) {
    std::string s = std::string(to_string(r.verdict)) + " at k=" + std::to_string(r.verdict_step);
    if (r.verdict == LockstepVerdict::EMismatch && !r.checkpoints.empty()) {
      const auto& c = r.checkpoints.back();
      s += "  E_I = " + show(c.e_image_i) + "  E_J = " + show(c.e_image_j);
    }
    if (r.hnf_t_steps_i != r.hnf_t_steps_j) s += "  (halting steps differ)";
    return s;
  }

  static bool lockstep_ok(const LockstepReport& r) { return r.passed() && r.hnf_t_steps_i == r.hnf_t_steps_j; }

  void lockstep_checks(const Term& t, TermGenerator& gen) {
    const LockstepReport r = lockstep(t, opt_.max_t, kAutoAuxCap, opt_.extractor);
    expect("lockstep", lockstep_ok(r), [&] { return show(t) + "  " + describe(r); });

    const Term u1 = gen.wrap(t);
    const Term u2 = gen.wrap(t);
    const LockstepReport rp = lockstep_pair(u1, u2, opt_.max_t, kAutoAuxCap, opt_.extractor);
    expect("lockstep_pairs", lockstep_ok(rp), [&] { return show(u1) + " / " + show(u2) + "  " + describe(rp); });
  }

  void bridge_checks(const Term& t) {
    if (!t.contains_h()) {
      vacuous("bridge_i");
      vacuous("bridge_j");
      vacuous("theorem");
      return;
    }
    const AgreementRow row = theorem_check(t, opt_.bridge_fuel);
    auto detail = [&](const VerdictSummary& a, const VerdictSummary& b) {
      auto one = [](const VerdictSummary& v) {
        return (v.hnf ? "hnf/" : "unknown/") + std::to_string(v.t_steps);
      };
      return [&, a, b] { return show(t) + "  " + one(a) + " vs " + one(b); };
    };
    expect("bridge_i", row.bridge_i != Agreement::Disagree, detail(row.verdict_it, row.verdict_i));
    expect("bridge_j", row.bridge_j != Agreement::Disagree, detail(row.verdict_jt, row.verdict_j));
    expect("theorem", row.theorem != Agreement::Disagree, detail(row.verdict_i, row.verdict_j));
  }

  void lift_checks(const Term& t) {
    for (const Term& c : h_candidates(t)) {
      if (c.is_abs()) continue;
      // Only the steps taken before the head acquires a binder are liftable.
      std::vector<TraceEntry> trace = *run(c, Strategy::PureJ, 0, kAutoAuxCap, true).trace;
      auto under_binder = std::find_if(trace.begin(), trace.end(), [](const TraceEntry& e) { return e.before.is_abs(); });
      trace.erase(under_binder, trace.end());
      for (std::size_t n = 0; n <= 2; ++n) {
        const std::vector<Term> args(values_.begin() + 1, values_.begin() + 1 + n);
        try {
          lift_j_trace(trace, args);
          pass("lift_replay");
        } catch (const InvalidTrace& e) {
          fail("lift_replay", show(c) + "  " + e.what());
        }
      }
    }
  }

  void head_app_checks(const Term& t) {
    const MachineOutcome u = solvable(t, opt_.head_app_fuel);
    if (!u.hnf() || !t.is_closed()) {
      vacuous("head_app_solvability");
      return;
    }
    const std::size_t fuel = opt_.head_app_fuel + u.t_steps;
    for (const Term& v : values_) {
      const auto a = VerdictSummary::of(solvable(app(t, v), fuel), fuel);
      const auto b = VerdictSummary::of(solvable(app(u.term, v), fuel), fuel);
      expect("head_app_solvability", compare_verdicts(a, b) != Agreement::Disagree,
             [&] { return show(t) + "  applied to " + show(v); });
    }
  }

  SuiteOptions opt_;
  std::vector<Term> values_;
  std::vector<std::pair<std::string, std::size_t>> index_;
  SuiteReport report_;
};

}  // namespace detail

// Evaluates the selected property groups on every corpus term.
inline SuiteReport lemma_suite(std::span<const Term> corpus, const SuiteOptions& options = {}) {
  detail::SuiteRunner runner(options);
  for (std::size_t i = 0; i < corpus.size(); ++i) runner.visit(corpus[i], i);
  return runner.take();
}

}  // namespace lambdah

#endif  // LAMBDAH_LEMMA_SUITE_HPP
