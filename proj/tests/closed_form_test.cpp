/* Copyright 2026 The dltlaws Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>

#include "dltlaws/closed_form.hpp"
#include "test_support.hpp"

namespace dlt {
namespace {

using testing::rel_close;

const HomogeneousParams kTable1Homo{4.2, 4.2, 2.2, 2.0, 1.5};

Platform hetero(std::size_t n) { return make_table1_platform(Table1Kind::Heterogeneous, n); }
Platform homo(std::size_t n) { return make_table1_platform(Table1Kind::Homogeneous, n); }

TEST(Model1, HeterogeneousTwoChildren) {
  // 1 + (4.2/4.2) * (1 + (8.4 - 3.3)/8.8)
  EXPECT_NEAR(speedup_model1(hetero(2)).value, 1.0 + 1.0 + 5.1 / 8.8, 1e-14);
  EXPECT_NEAR(speedup_model1(hetero(2)).value, 2.5795454545454545, 1e-14);
}

TEST(Model1, RootOnly) {
  EXPECT_EQ(speedup_model1(hetero(0)).value, 1.0);
  EXPECT_EQ(speedup_model1_homogeneous(kTable1Homo, 0).value, 1.0);
}

TEST(Model1, HomogeneousClosedForm) {
  const double sigma = 3.3 / 8.4;
  EXPECT_NEAR(sigma, 0.39285714285714285, 1e-15);
  EXPECT_NEAR(speedup_model1_homogeneous(kTable1Homo, 30).value, 3.5454537428676815648, 1e-13);
}

TEST(Model1, HomogeneousConvergesFromBelow) {
  const double limit = 1.0 + 1.0 / (3.3 / 8.4);
  double prev = 1.0;
  for (int n = 1; n <= 200; ++n) {
    const double v = speedup_model1_homogeneous(kTable1Homo, n).value;
    EXPECT_GE(v, prev);
    EXPECT_LE(v, limit + 1e-12);
    prev = v;
  }
  EXPECT_NEAR(prev, limit, 1e-12);
}

TEST(Model1, InfeasibleNamesIndex) {
  // Child 2 has omega*T_cp = 2 < z*T_cm = 3.
  const Platform p{1.0, {{4, 1}, {1, 1.5}, {4, 1}}, 2.0, 2.0};
  try {
    (void)speedup_model1(p);
    FAIL() << "expected infeasible_protocol_error";
  } catch (const infeasible_protocol_error& e) {
    EXPECT_EQ(e.index(), 2u);
  }
  EXPECT_THROW(speedup_model1_homogeneous({1, 1, 3, 1, 1}, 5), infeasible_protocol_error);
}

TEST(Model1, ZeroChainRatioAllowed) {
  // q_2 = 0: child 1's link time equals its compute time.
  const Platform p{1.0, {{2, 2}, {3, 1}}, 1.0, 1.0};
  EXPECT_NEAR(speedup_model1(p).value, 1.0 + 0.5, 1e-15);
  EXPECT_NEAR(speedup_model1_homogeneous({1, 2, 2, 1, 1}, 7).value, 1.5, 1e-15);
}

TEST(Model2, Table1Values) {
  EXPECT_NEAR(speedup_model2(homo(30)).value, 1.0 + 8.4 / 11.7 * 30.0, 1e-12);
  EXPECT_NEAR(speedup_model2(homo(30)).value, 22.538461538461538, 1e-12);
  EXPECT_NEAR(speedup_model2_homogeneous(kTable1Homo, 30).value, 22.538461538461538, 1e-12);
  EXPECT_EQ(speedup_model2(homo(0)).value, 1.0);
  EXPECT_EQ(speedup_model2_homogeneous(kTable1Homo, 0).value, 1.0);

  // Heterogeneous term i is 1/(11.7 + 0.7(i-1)).
  double expected = 1.0;
  for (int i = 1; i <= 30; ++i) expected += 8.4 / (11.7 + 0.7 * (i - 1));
  EXPECT_NEAR(speedup_model2(hetero(30)).value, expected, 1e-12);
  EXPECT_NEAR(speedup_model2(hetero(30)).value, 13.567088835476171177, 1e-12);
}

TEST(Model2, RealValuedN) {
  EXPECT_NEAR(speedup_model2_homogeneous(kTable1Homo, 2.5).value, 1.0 + 8.4 / 11.7 * 2.5, 1e-14);
  EXPECT_THROW(speedup_model2_homogeneous(kTable1Homo, -1.0), domain_error);
}

TEST(Model3, Table1Values) {
  EXPECT_DOUBLE_EQ(speedup_model3(homo(20)).value, 21.0);
  EXPECT_NEAR(speedup_model3(hetero(2)).value, 1.0 + 4.2 * (1.0 / 4.2 + 1.0 / 4.4), 1e-14);
  EXPECT_NEAR(speedup_model3(hetero(2)).value, 2.9545454545454545, 1e-14);
  EXPECT_EQ(speedup_model3(hetero(0)).value, 1.0);
}

TEST(Model3, StarvationIsInfeasible) {
  const Platform p{1.0, {{4, 1}, {1, 3}}, 1.0, 1.0};
  try {
    (void)speedup_model3(p);
    FAIL() << "expected infeasible_protocol_error";
  } catch (const infeasible_protocol_error& e) {
    EXPECT_EQ(e.index(), 2u);
  }
}

TEST(ClosedForms, MatchHighPrecisionOracle) {
  for (const auto& o : testing::kOracleSpeedups) {
    const Platform p = make_table1_platform(o.kind, o.n);
    const double v = speedup(p, protocol_from_number(o.model)).value;
    EXPECT_TRUE(rel_close(v, o.value, 1e-13)) << "model " << o.model << " n " << o.n << ": " << v;
  }
}

TEST(ClosedForms, HomogeneousSpecialization) {
  for (std::size_t n = 1; n <= 50; ++n) {
    const Platform p = homo(n);
    const double dn = static_cast<double>(n);
    EXPECT_TRUE(rel_close(speedup_model1(p).value, speedup_model1_homogeneous(kTable1Homo, dn).value, 1e-12));
    EXPECT_TRUE(rel_close(speedup_model2(p).value, speedup_model2_homogeneous(kTable1Homo, dn).value, 1e-12));
    EXPECT_TRUE(rel_close(speedup_model3(p).value, speedup_model3_homogeneous(kTable1Homo, dn).value, 1e-12));
    EXPECT_EQ(speedup_model3(p).value, 1.0 + dn);
  }
}

TEST(ClosedForms, DispatchOrdersChildren) {
  const Platform shuffled{4.2, {{4.6, 2.6}, {4.2, 2.2}, {4.4, 2.4}}, 2.0, 1.5};
  EXPECT_NEAR(speedup(shuffled, Protocol::Model1Sequential).value, speedup_model1(hetero(3)).value, 1e-15);
  EXPECT_NE(speedup_model1(shuffled).value, speedup_model1(hetero(3)).value);
  EXPECT_NEAR(speedup(homo(30), Protocol::Model2StaggeredStart).value, 22.538461538461538, 1e-12);
  for (Protocol p : kAllProtocols) EXPECT_EQ(speedup(homo(0), p).value, 1.0);
}

TEST(ClosedForms, HomogeneousAtLeastHeterogeneous) {
  for (Protocol protocol : kAllProtocols) {
    for (std::size_t n = 1; n <= 50; ++n) {
      EXPECT_GE(speedup(homo(n), protocol).value, speedup(hetero(n), protocol).value) << n;
    }
  }
}

TEST(ClosedForms, SimultaneousStartBeatsStaggered) {
  testing::FeasiblePlatformGen gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Platform p = gen();
    const double m2 = speedup(p, Protocol::Model2StaggeredStart).value;
    const double m3 = speedup(p, Protocol::Model3SimultaneousStart).value;
    EXPECT_GE(m3, m2);
    if (p.size() > 0) {
      EXPECT_GT(m3, m2);
    }
  }
}

// Sequential distribution does not beat staggered start at every n: with one
// or two children it wins, because the single first child computes while
// receiving. From three children on the ordering matches the curves.
TEST(ClosedForms, SequentialVersusStaggeredCrossover) {
  for (auto kind : {Table1Kind::Heterogeneous, Table1Kind::Homogeneous}) {
    for (std::size_t n = 1; n <= 50; ++n) {
      const Platform p = make_table1_platform(kind, n);
      const double m1 = speedup(p, Protocol::Model1Sequential).value;
      const double m2 = speedup(p, Protocol::Model2StaggeredStart).value;
      if (n <= 2) {
        EXPECT_GT(m1, m2) << n;
      } else {
        EXPECT_GT(m2, m1) << n;
      }
    }
  }
}

TEST(ClosedForms, NondecreasingInChildCount) {
  testing::FeasiblePlatformGen gen(23);
  for (int trial = 0; trial < 100; ++trial) {
    const Platform p = order_children(gen(20)).platform;
    for (Protocol protocol : kAllProtocols) {
      double prev = 1.0;
      for (std::size_t n = 0; n <= p.size(); ++n) {
        const double v = speedup(p.truncated(n), protocol).value;
        EXPECT_GE(v, 1.0);
        EXPECT_GE(v, prev - 1e-12);
        prev = v;
      }
    }
  }
}

}  // namespace
}  // namespace dlt
