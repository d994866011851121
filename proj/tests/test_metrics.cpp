// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#include "curvecast/metrics.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "oracles.hpp"

using curvecast::ControlSequence;
using curvecast::CurvePair;

namespace {

CurvePair pair_from(const std::vector<std::int64_t>& positions,
                    const std::vector<double>& actual,
                    const std::vector<double>& estimated) {
  CurvePair pair;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    pair.actual[positions[i]] = actual[i];
    pair.estimated[positions[i]] = estimated[i];
  }
  return pair;
}

const std::vector<std::int64_t> kControls{300000, 400000, 500000, 600000, 700000};

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("control sequences") {
  const auto sequence = curvecast::make_control_sequence(300000, 700000, 100000);
  CHECK(sequence.levels == kControls);
  CHECK_THROWS_AS(curvecast::make_control_sequence(0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(curvecast::make_control_sequence(10, 5, 1), std::invalid_argument);
  ControlSequence unsorted{{5, 4}};
  CHECK_THROWS_AS(curvecast::validate(unsorted), std::invalid_argument);
  ControlSequence empty{};
  CHECK_THROWS_AS(curvecast::validate(empty), std::invalid_argument);
}

TEST_CASE("percentage error") {
  const auto morfette = pair_from({300000}, {94.61}, {94.54});
  CHECK(curvecast::percentage_error(morfette, 300000) ==
        doctest::Approx(-0.073987950533763).epsilon(1e-12));

  const auto flat = pair_from({1}, {90.0}, {90.0});
  CHECK(curvecast::percentage_error(flat, 1) == 0.0);

  const auto over = pair_from({1}, {50.0}, {51.0});
  CHECK(curvecast::percentage_error(over, 1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(curvecast::percentage_error(over, 1) > 0.0);  // overshoot is positive

  const auto zero = pair_from({1}, {0.0}, {51.0});
  CHECK_THROWS_AS(curvecast::percentage_error(zero, 1), std::domain_error);
  CHECK_THROWS_AS(curvecast::percentage_error(over, 2), std::out_of_range);
}

TEST_CASE("mape matches the published monitoring values") {
  ControlSequence sequence{kControls};
  const auto stanford = pair_from(kControls, {94.41, 94.78, 95.07, 95.26, 95.41},
                                  {94.43, 94.80, 95.07, 95.27, 95.43});
  const double stanford_mape = curvecast::mape(stanford, sequence);
  CHECK(stanford_mape == doctest::Approx(0.014749088729259832).epsilon(1e-12));
  CHECK(std::abs(stanford_mape - 0.02) <= 0.02);

  const auto mxpost = pair_from(kControls, {93.44, 93.88, 94.20, 94.44, 94.63},
                                {93.17, 93.57, 93.85, 94.06, 94.23});
  const double mxpost_mape = curvecast::mape(mxpost, sequence);
  CHECK(mxpost_mape == doctest::Approx(0.36315699189321143).epsilon(1e-12));
  CHECK(std::abs(mxpost_mape - 0.35) <= 0.02);
}

TEST_CASE("a constant offset near accuracy 100 is roughly the offset") {
  ControlSequence sequence{kControls};
  const double offset = 0.25;
  std::vector<double> actual(5, 99.6), estimated(5, 99.6 + offset);
  const auto pair = pair_from(kControls, actual, estimated);
  CHECK(curvecast::mape(pair, sequence) == doctest::Approx(offset).epsilon(0.01));
}

TEST_CASE("mape is order invariant and zero only on equality") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> acc(80.0, 100.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> actual, estimated;
    for (int i = 0; i < 5; ++i) {
      actual.push_back(acc(rng));
      estimated.push_back(acc(rng));
    }
    const auto pair = pair_from(kControls, actual, estimated);
    ControlSequence forward{kControls};
    ControlSequence reversed{{700000, 600000, 500000, 400000, 300000}};
    std::reverse(reversed.levels.begin(), reversed.levels.end());  // re-sorted
    CHECK(curvecast::mape(pair, forward) ==
          doctest::Approx(curvecast::mape(pair, reversed)).epsilon(1e-12));
    CHECK(curvecast::mape(pair, forward) >= 0.0);
  }
  const auto equal = pair_from(kControls, {90, 91, 92, 93, 94}, {90, 91, 92, 93, 94});
  CHECK(curvecast::mape(equal, ControlSequence{kControls}) == 0.0);
}

TEST_CASE("order preservation indicator") {
  const auto above = pair_from({1}, {95.0}, {94.0});
  const auto below = pair_from({1}, {93.0}, {92.0});
  CHECK(curvecast::order_preserved(above, below, 1) == 1);

  const auto flipped = pair_from({1}, {95.0}, {91.0});
  CHECK(curvecast::order_preserved(below, flipped, 1) == 0);  // actual <, estimated >

  const auto tied = pair_from({1}, {94.0}, {92.0});
  CHECK(curvecast::order_preserved(below, tied, 1) == 1);  // estimate tie counts
}

TEST_CASE("order preservation is symmetric and scale robust") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> acc(50.0, 100.0), factor(0.1, 4.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto e = pair_from({1}, {acc(rng)}, {acc(rng)});
    const auto f = pair_from({1}, {acc(rng)}, {acc(rng)});
    CHECK(curvecast::order_preserved(e, f, 1) == curvecast::order_preserved(f, e, 1));

    const double k = factor(rng);
    const auto scale = [&](CurvePair pair) {
      for (auto& [pos, v] : pair.actual) v *= k;
      for (auto& [pos, v] : pair.estimated) v *= k;
      return pair;
    };
    CHECK(curvecast::order_preserved(scale(e), scale(f), 1) ==
          curvecast::order_preserved(e, f, 1));
  }
}

TEST_CASE("agreement rate counts preserved levels") {
  ControlSequence sequence{kControls};
  const auto e = pair_from(kControls, {95, 95, 95, 95, 95}, {94, 94, 94, 94, 94});
  const auto f = pair_from(kControls, {93, 93, 93, 93, 93}, {92, 92, 92, 92, 92});
  CHECK(curvecast::order_agreement_rate(e, f, sequence) == 100.0);

  auto g = f;
  g.estimated[300000] = 96.0;  // one flip
  CHECK(curvecast::order_agreement_rate(e, g, sequence) == 80.0);
}

TEST_CASE("agreement rate equals an independent recount") {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> acc(80.0, 100.0);
  ControlSequence sequence{kControls};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> ea, ee, fa, fe;
    for (int i = 0; i < 5; ++i) {
      ea.push_back(acc(rng));
      ee.push_back(acc(rng));
      fa.push_back(acc(rng));
      fe.push_back(acc(rng));
    }
    const auto e = pair_from(kControls, ea, ee);
    const auto f = pair_from(kControls, fa, fe);
    CHECK(curvecast::order_agreement_rate(e, f, sequence) ==
          oracles::recount_agreement(e, f, sequence));
  }
}

TEST_CASE("decision reliability over a peer pool") {
  ControlSequence sequence{kControls};
  // e sits above every peer in actual terms; flip one estimate for two peers.
  const auto e = pair_from(kControls, {96, 96, 96, 96, 96}, {95, 95, 95, 95, 95});
  std::vector<CurvePair> peers;
  for (int k = 0; k < 7; ++k) {
    auto peer = pair_from(kControls, {93, 93, 93, 93, 93}, {92, 92, 92, 92, 92});
    if (k < 2) peer.estimated[500000] = 99.0;  // breaks the order at one level
    peers.push_back(std::move(peer));
  }
  CHECK(curvecast::decision_reliability(e, peers, sequence) ==
        doctest::Approx(100.0 * 5.0 / 7.0).epsilon(1e-12));

  peers.erase(peers.begin(), peers.begin() + 2);  // five agreeing peers remain
  CHECK(curvecast::decision_reliability(e, peers, sequence) == 100.0);

  CHECK_THROWS_AS(curvecast::decision_reliability(e, {}, sequence),
                  std::invalid_argument);
}

TEST_CASE("identical runs agree perfectly") {
  ControlSequence sequence{kControls};
  const auto e = pair_from(kControls, {94, 95, 95.5, 96, 96.2},
                           {94.1, 95.1, 95.6, 96.1, 96.3});
  const auto twin = e;  // all gaps zero: the >= 0 boundary case
  CHECK(curvecast::order_agreement_rate(e, twin, sequence) == 100.0);
  std::vector<CurvePair> peers{twin};
  CHECK(curvecast::decision_reliability(e, peers, sequence) == 100.0);
}

TEST_CASE("robustness rate") {
  const std::vector<double> decreasing{99.5, 99.4, 99.3, 99.2};
  CHECK(curvecast::robustness_rate(decreasing) == 100.0);

  const std::vector<double> kinked{99.5, 99.4, 99.3, 99.35, 99.30};
  CHECK(curvecast::robustness_rate(kinked) == doctest::Approx(60.0).epsilon(1e-12));

  const std::vector<double> single{97.0};
  CHECK(curvecast::robustness_rate(single) == 100.0);

  CHECK_THROWS_AS(curvecast::robustness_rate(std::vector<double>{}),
                  std::invalid_argument);
}

TEST_CASE("robustness rate equals the brute-force scan") {
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> value(90.0, 100.0);
  std::uniform_int_distribution<int> length(1, 25);
  std::uniform_int_distribution<int> tie(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> backbone;
    const int n = length(rng);
    for (int i = 0; i < n; ++i) {
      if (i > 0 && tie(rng) == 0)
        backbone.push_back(backbone.back());  // exercise the tie rule
      else
        backbone.push_back(value(rng));
    }
    CHECK(curvecast::robustness_rate(backbone) ==
          oracles::brute_force_robustness(backbone));
  }
}

}  // TEST_SUITE
