#include <iostream>

#include "wedge/verify.hpp"

int main() {
    const auto results = wedge::run_verification(std::cout);
    int failures = 0;
    for (const auto& r : results)
        if (!r.pass) ++failures;
    if (failures) {
        std::cout << failures << " of " << results.size() << " checks failed\n";
        return 1;
    }
    std::cout << "all " << results.size() << " checks passed\n";
    return 0;
}
