// Parses a context, runs it with H read as I and as J, and compares the runs.

#include <iostream>

#include "lambdah/lambdah.hpp"

int main() {
  using namespace lambdah;

  const ParsedTerm ctx = parse_open_term("H (\\x.x) y");
  std::cout << "context   " << print(ctx.term, ctx.free_names) << "\n";
  std::cout << "E         " << print(extract(ctx.term), ctx.free_names) << "\n";

  for (Strategy s : {Strategy::IT, Strategy::JT}) {
    const MachineOutcome out = run(ctx.term, s, 100, kAutoAuxCap, true);
    std::cout << to_string(s) << " run\n";
    for (const TraceEntry& e : *out.trace) {
      std::cout << "  " << to_string(e.kind) << "  " << print(e.before, ctx.free_names) << "  ->  "
                << print(e.after, ctx.free_names) << "\n";
    }
  }

  const LockstepReport report = lockstep(ctx.term, 100);
  std::cout << "lockstep  " << to_string(report.verdict) << " after " << report.checkpoints.size() - 1
            << " t-steps\n";

  const MachineOutcome j = solvable(make_J(), 50);
  std::cout << "J ->t*    " << print(j.term) << "  (" << j.t_steps << " t-steps)\n";
  return 0;
}
