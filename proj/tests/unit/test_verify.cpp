#include <gtest/gtest.h>

#include "ipmesh/verify.hpp"

TEST(InvariantSuite, AllChecksPassForSeveralSeeds) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto results = ipmesh::run_invariant_suite(seed);
        EXPECT_GE(results.size(), 10u);
        for (const auto& r : results) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
    }
}
