#include <gtest/gtest.h>

#include "lambdah/json.hpp"
#include "lambdah/lambdah.hpp"

namespace lambdah {
namespace {

TEST(Json, TraceEntrySchema) {
  const Term t = parse_term("H x y", {"x", "y"});
  const MachineOutcome out = run(t, Strategy::JT, 10, kAutoAuxCap, true);
  const auto j = to_json(out.trace->at(0), {"x", "y"});
  EXPECT_EQ(j.dump(), R"j({"kind":"j_wrap","before":"H x y","after":"x (H y)","t_steps":0})j");
  const auto back = nlohmann::json::parse(j.dump());
  EXPECT_EQ(back.at("kind"), "j_wrap");
}

TEST(Json, AgreementRowSchema) {
  const AgreementRow row = theorem_check(h(), 100);
  const auto j = to_json(row, "H");
  EXPECT_EQ(j.dump(), R"j({"context":"H","verdict_I":"hnf","verdict_J":"hnf","agree":true,"t_steps_I":0,"t_steps_J":3})j");
  const AgreementRow stuck = theorem_check(app(h(), make_omega()), 10);
  EXPECT_EQ(to_json(stuck, "H Omega").at("verdict_I"), "unknown");
}

}  // namespace
}  // namespace lambdah
