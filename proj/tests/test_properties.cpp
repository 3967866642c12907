#include "properties.hpp"

#include <gtest/gtest.h>

namespace {

void expect_ok(const props::Result& r) { EXPECT_TRUE(r.ok) << r.name << ": " << r.detail; }

}  // namespace

TEST(Properties, AxiomFuzz) { expect_ok(props::axiom_fuzz(1000, 40, 20240611)); }
TEST(Properties, GraphSwitching) { expect_ok(props::graph_switching(300, 7)); }
TEST(Properties, LineSwitching) { expect_ok(props::line_switching(11)); }
TEST(Properties, SetSums) { expect_ok(props::setsum_identities()); }
TEST(Properties, FourSums) { expect_ok(props::foursum_identities()); }
TEST(Properties, RelativeBoundIffRegular) { expect_ok(props::relative_bound_iff_regular()); }
TEST(Properties, ComplementConstruction) { expect_ok(props::complement_construction()); }
TEST(Properties, FuseIdentity) { expect_ok(props::fuse_identity(2000, 5)); }
