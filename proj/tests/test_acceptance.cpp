#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "rscc/acceptance.hpp"

using namespace rscc;

TEST_CASE("full acceptance battery") {
    const auto results = run_acceptance();
    std::fputs(format_acceptance(results).c_str(), stdout);

    REQUIRE(results.size() == 10);
    for (const auto& r : results)
        CHECK_MESSAGE(r.pass, r.id << " " << r.name << ": " << r.detail);
    CHECK(all_passed(results));
}
