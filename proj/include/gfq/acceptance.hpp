#ifndef GFQ_ACCEPTANCE_HPP
#define GFQ_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace gfq::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string note;
};

/// Runs the eight desk-scale acceptance criteria. `quick` divides the random
/// instance counts by ten.
std::vector<CriterionResult> run_all(bool quick);

/// Prints one PASS/FAIL line per criterion and returns true when all pass.
bool run_and_report(std::ostream& os, bool quick);

}  // namespace gfq::acceptance

#endif
