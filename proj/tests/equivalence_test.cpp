#include <gtest/gtest.h>

#include "lambdah/equivalence.hpp"
#include "lambdah/extraction.hpp"
#include "lambdah/gen.hpp"
#include "lambdah/lemma_suite.hpp"
#include "lambdah/syntax.hpp"
#include "oracles.hpp"

namespace lambdah {
namespace {

const std::vector<std::string> kNames{"x", "y", "w"};

Term T(const std::string& text) {
  ParseOptions options;
  options.constants = builtin_constant;
  return parse_term(text, kNames, options);
}

TEST(Lockstep, Examples) {
  const LockstepReport a = lockstep(T("H (\\v.v) y"), 100);
  EXPECT_EQ(a.verdict, LockstepVerdict::BothHnf);
  EXPECT_EQ(a.hnf_t_steps_i, 1u);
  EXPECT_EQ(a.hnf_t_steps_j, 1u);
  ASSERT_EQ(a.checkpoints.size(), 2u);
  EXPECT_EQ(a.checkpoints[1].e_image_i, T("y"));

  const LockstepReport b = lockstep(make_I(), 100);
  EXPECT_EQ(b.verdict, LockstepVerdict::BothHnf);
  EXPECT_EQ(b.checkpoints.size(), 1u);

  const LockstepReport c = lockstep(app(h(), make_omega()), 50);
  EXPECT_EQ(c.verdict, LockstepVerdict::BothRunning);
  EXPECT_EQ(c.checkpoints.size(), 51u);
  for (const auto& cp : c.checkpoints) EXPECT_TRUE(cp.equal);
}

TEST(Lockstep, WrongExtractorIsCaught) {
  const Extractor identity = [](const Term& t) { return t; };
  const LockstepReport r = lockstep(T("H x y"), 10, kAutoAuxCap, identity);
  EXPECT_EQ(r.verdict, LockstepVerdict::EMismatch);
  EXPECT_EQ(r.verdict_step, 0u);
  EXPECT_FALSE(r.passed());
}

TEST(Lockstep, PairsWithDifferentEImagesAreCaught) {
  const LockstepReport r = lockstep_pair(T("x"), T("y"), 10);
  EXPECT_EQ(r.verdict, LockstepVerdict::EMismatch);
  const LockstepReport d = lockstep_pair(make_I(), make_omega(), 10);
  EXPECT_FALSE(d.passed());
}

TEST(Lockstep, RandomContextsStayInStep) {
  TermGenerator gen({17, 20, 0, 0.5});
  for (int i = 0; i < 300; ++i) {
    const Term u = gen.term();
    const LockstepReport r = lockstep(u, 60);
    ASSERT_TRUE(r.passed()) << print(u) << " " << to_string(r.verdict);
    ASSERT_EQ(r.hnf_t_steps_i, r.hnf_t_steps_j) << print(u);
  }
}

TEST(Lockstep, RunawayGrowthEndsTheComparison) {
  const LockstepReport r = lockstep(T("H (\\v.v v) (\\v.v v)"), 1000);
  EXPECT_EQ(r.verdict, LockstepVerdict::BothRunning);
  EXPECT_TRUE(r.space_limited);
  EXPECT_LT(r.checkpoints.size(), 100u);
  for (const auto& cp : r.checkpoints) EXPECT_TRUE(cp.equal);
}

TEST(CompareVerdicts, Classes) {
  EXPECT_EQ(compare_verdicts({true, 3, 100}, {true, 9, 100}), Agreement::BothHnf);
  EXPECT_EQ(compare_verdicts({false, 100, 100}, {false, 100, 100}), Agreement::BothUnknown);
  EXPECT_EQ(compare_verdicts({true, 30, 100}, {false, 100, 100}), Agreement::OneSided);
  EXPECT_EQ(compare_verdicts({true, 10, 100}, {false, 100, 100}), Agreement::Disagree);
  EXPECT_EQ(compare_verdicts({false, 100, 100}, {true, 0, 100}), Agreement::Disagree);
}

TEST(TheoremCheck, Examples) {
  const Term w = lam(app(var(0), var(0)));
  const AgreementRow a = theorem_check(app(h(), w), 100);
  EXPECT_TRUE(a.verdict_i.hnf);
  EXPECT_TRUE(a.verdict_j.hnf);
  EXPECT_EQ(a.theorem, Agreement::BothHnf);
  EXPECT_TRUE(a.agree);
  EXPECT_TRUE(a.bridges_hold());

  const AgreementRow b = theorem_check(h(), 100);
  EXPECT_EQ(b.theorem, Agreement::BothHnf);
  EXPECT_EQ(b.verdict_i.t_steps, 0u);
  EXPECT_EQ(b.verdict_j.t_steps, 3u);

  const AgreementRow c = theorem_check(app(h(), make_omega()), 100);
  EXPECT_EQ(c.theorem, Agreement::BothUnknown);
  EXPECT_TRUE(c.agree);
}

TEST(TheoremCheck, SpaceLimitedRunsCountOnlyTheirOwnSteps) {
  const AgreementRow r = theorem_check(T("H (\\v.v v) (\\v.v v)"), 10000);
  EXPECT_FALSE(r.verdict_jt.hnf);
  EXPECT_LT(r.verdict_jt.fuel, 100u);
  EXPECT_EQ(r.verdict_jt.fuel, r.verdict_jt.t_steps);
  EXPECT_EQ(r.theorem, Agreement::BothUnknown);
}

TEST(TheoremCheck, BridgeStepCounts) {
  // THead on U[I/H] spends one beta step per I-step of the IT machine.
  const AgreementRow r = theorem_check(T("H (\\v.H v) (\\v.v)"), 50);
  ASSERT_TRUE(r.verdict_it.hnf);
  ASSERT_TRUE(r.verdict_i.hnf);
  const MachineOutcome it = run(T("H (\\v.H v) (\\v.v)"), Strategy::IT, 50);
  EXPECT_EQ(r.verdict_i.t_steps, it.t_steps + it.aux_steps);
}

TEST(Lift, DropBecomesWrap) {
  const MachineOutcome out = run(T("H x"), Strategy::PureJ, 0, kAutoAuxCap, true);
  ASSERT_EQ(out.trace->size(), 1u);
  const LiftWitness lw = lift_j_trace(*out.trace, {T("w")});
  ASSERT_EQ(lw.lifted_trace.size(), 1u);
  EXPECT_EQ(lw.lifted_trace[0].kind, StepKind::JWrap);
  EXPECT_EQ(lw.lifted_trace[0].before, T("H x w"));
  EXPECT_EQ(lw.lifted_trace[0].after, T("x (H w)"));
  EXPECT_EQ(lw.primed_args, std::vector<Term>{T("H w")});
  ASSERT_EQ(lw.residual_traces.size(), 1u);
  ASSERT_EQ(lw.residual_traces[0].size(), 1u);
  EXPECT_EQ(lw.residual_traces[0][0].before, T("H w"));
  EXPECT_EQ(lw.residual_traces[0][0].after, T("w"));
}

TEST(Lift, WrapStepsLiftUnchanged) {
  const MachineOutcome out = run(T("H x y"), Strategy::PureJ, 0, kAutoAuxCap, true);
  const LiftWitness lw = lift_j_trace(*out.trace, {T("w")});
  ASSERT_EQ(lw.lifted_trace.size(), 1u);
  EXPECT_EQ(lw.lifted_trace[0].kind, StepKind::JWrap);
  EXPECT_EQ(lw.lifted_trace[0].after, T("x (H y) w"));
  EXPECT_EQ(lw.primed_args, std::vector<Term>{T("w")});
  EXPECT_TRUE(lw.residual_traces[0].empty());
}

TEST(Lift, EmptyTrace) {
  const LiftWitness lw = lift_j_trace({}, {T("w"), T("x")});
  EXPECT_TRUE(lw.lifted_trace.empty());
  EXPECT_EQ(lw.primed_args, lw.args);
  EXPECT_NO_THROW(validate(lw));
}

TEST(Lift, RejectsBrokenTraces) {
  const TraceEntry bogus{StepKind::JWrap, T("H x y"), T("y (H x)"), 0};
  EXPECT_THROW(lift_j_trace({bogus}, {}), InvalidTrace);
  const TraceEntry beta{StepKind::T, T("(\\v.v) x"), T("x"), 0};
  EXPECT_THROW(lift_j_trace({beta}, {}), InvalidTrace);
  const TraceEntry under{StepKind::JDrop, T("\\v.H v"), T("\\v.v"), 0};
  EXPECT_THROW(lift_j_trace({under}, {T("w")}), InvalidTrace);

  LiftWitness lw = lift_j_trace(*run(T("H x"), Strategy::PureJ, 0, kAutoAuxCap, true).trace, {T("w")});
  lw.primed_args[0] = T("w");
  EXPECT_THROW(validate(lw), InvalidTrace);
}

TEST(Lift, RandomTopLevelTraces) {
  TermGenerator gen({23, 12, 2, 0.5});
  std::size_t nontrivial = 0;
  for (int i = 0; i < 1000; ++i) {
    const Term u = app(h(), gen.term(), gen.term());
    const MachineOutcome out = run(u, Strategy::PureJ, 0, kAutoAuxCap, true);
    std::vector<TraceEntry> trace;
    for (const auto& e : *out.trace) {
      if (e.before.is_abs()) break;
      trace.push_back(e);
    }
    const std::vector<Term> args{gen.term(), gen.term()};
    const LiftWitness lw = lift_j_trace(trace, args);
    ASSERT_EQ(lw.lifted_trace.size(), trace.size());
    for (const auto& r : lw.residual_traces) nontrivial += !r.empty();
  }
  EXPECT_GT(nontrivial, 20u);
}

TEST(Suite, SmallCorpusPasses) {
  const std::vector<Term> corpus{make_I(), T("H x"), app(h(), make_I(), lam(h()))};
  const SuiteReport report = lemma_suite(corpus);
  EXPECT_TRUE(report.passed());
  for (const char* name : {"shape", "idempotence", "lockstep", "bridge_i", "bridge_j", "theorem", "lift_replay"}) {
    ASSERT_NE(report.find(name), nullptr) << name;
  }
}

TEST(Suite, ExhaustiveClosedSizeSix) {
  const auto corpus = enumerate(6, 0);
  const SuiteReport report = lemma_suite(corpus);
  for (const auto& c : report.checks) {
    EXPECT_TRUE(c.passed()) << c.name << ": " << (c.counterexamples.empty() ? "" : c.counterexamples.front());
    EXPECT_GT(c.checked + c.vacuous, 0u) << c.name;
  }
}

TEST(Suite, MutatedExtractorFails) {
  SuiteOptions options;
  options.extractor = [](const Term& t) { return t; };
  const std::vector<Term> corpus{T("H x y"), app(h(), make_I(), make_I())};
  const SuiteReport report = lemma_suite(corpus, options);
  EXPECT_FALSE(report.passed());
  EXPECT_FALSE(report.find("shape")->passed());
  EXPECT_FALSE(report.find("lockstep")->passed());
}

TEST(Suite, GroupSelection) {
  SuiteOptions options;
  options.groups = *parse_suite("extraction");
  const std::vector<Term> corpus{make_I()};
  const SuiteReport report = lemma_suite(corpus, options);
  EXPECT_NE(report.find("shape"), nullptr);
  EXPECT_EQ(report.find("lockstep"), nullptr);
  EXPECT_FALSE(parse_suite("nope").has_value());
}

}  // namespace
}  // namespace lambdah
