// Runs every acceptance criterion and prints one line per criterion.
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

#include "probalab/acceptance.hpp"

int main(int argc, char** argv) {
  probalab::acceptance::Options opt;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) opt.quick = true;
    else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) opt.seed = std::stoull(argv[++i]);
    else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::stoi(argv[++i]);
    else {
      std::cerr << "usage: probalab_acceptance [--quick] [--seed S] [--only ID]\n";
      return 2;
    }
  }
  bool ok = true;
  const auto report = [&](const probalab::acceptance::Outcome& o) {
    std::cout << probalab::acceptance::line(o) << "  [" << o.seconds << " s]" << std::endl;
    ok = ok && o.pass;
    if (!o.pass)
      for (const auto& r : o.checks)
        if (!r.pass) std::cout << "    failed: " << r.criterion << " lhs=" << r.lhs << " rhs=" << r.rhs << "\n";
  };
  if (only > 0) {
    report(probalab::acceptance::run_criterion(only, opt));
  } else {
    for (const auto& o : probalab::acceptance::run_all(opt)) report(o);
  }
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
