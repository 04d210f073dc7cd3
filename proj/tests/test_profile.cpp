#include <doctest.h>

#include <cmath>

#include "gazeff/profile.hpp"
#include "test_util.hpp"

using namespace gazeff;

namespace {

// Brute-force run-length simulator used as the merge oracle: operates on a
// plain label array, rescanning from scratch after every single merge.
std::vector<Segment> oracle_segment(const std::vector<double>& s_hat, double pct,
                                    int min_len) {
    const int n = static_cast<int>(s_hat.size());
    std::vector<double> nonzero;
    for (double x : s_hat)
        if (x > 0.0) nonzero.push_back(x);
    std::vector<int> label(n, 0);
    if (!nonzero.empty()) {
        const double thr = percentile(nonzero, pct);
        for (int i = 0; i < n; ++i) label[i] = s_hat[i] >= thr ? 1 : 0;
    }

    auto scan = [&]() {
        std::vector<Segment> runs;
        int start = 0;
        for (int i = 1; i <= n; ++i) {
            if (i == n || label[i] != label[start]) {
                Segment s;
                s.start_frame = start;
                s.end_frame = i - 1;
                s.label = label[start] ? SegmentLabel::Relevant : SegmentLabel::NonRelevant;
                double sum = 0;
                for (int k = start; k < i; ++k) sum += s_hat[k];
                s.mean_score = sum / (i - start);
                runs.push_back(s);
                start = i;
            }
        }
        return runs;
    };

    while (true) {
        auto runs = scan();
        if (runs.size() <= 1) return runs;
        int victim = -1;
        for (int k = 0; k < static_cast<int>(runs.size()); ++k)
            if (runs[k].length() < min_len &&
                (victim < 0 || runs[k].length() < runs[victim].length()))
                victim = k;
        if (victim < 0) return runs;
        int into;
        if (victim == 0) into = 1;
        else if (victim + 1 == static_cast<int>(runs.size())) into = victim - 1;
        else {
            const double dp = std::abs(runs[victim].mean_score - runs[victim - 1].mean_score);
            const double dn = std::abs(runs[victim].mean_score - runs[victim + 1].mean_score);
            into = dp <= dn ? victim - 1 : victim + 1;
        }
        for (int i = runs[victim].start_frame; i <= runs[victim].end_frame; ++i)
            label[i] = runs[into].label == SegmentLabel::Relevant ? 1 : 0;
    }
}

SemanticProfile profile_from_scores(std::vector<double> s) {
    const std::vector<double> ones(s.size(), 1.0);
    return compose(ones, ones, s, ones);
}

}  // namespace

TEST_CASE("compose multiplies channels and normalizes") {
    const auto p = compose({1, 0, 1}, {0.5, 0.9, 0.25}, {2.0, 3.0, 2.0}, {1, 1, 1});
    CHECK(p.fused[0] == 1.0);
    CHECK(p.fused[1] == 0.0);  // v=0 annihilates
    CHECK(p.fused[2] == 0.5);
    CHECK(p.normalized[0] == 1.0);
    CHECK(p.normalized[2] == 0.5);

    const auto zeros = compose({0, 0}, {1, 1}, {1, 1}, {1, 1});
    CHECK(zeros.normalized[0] == 0.0);
    CHECK(zeros.normalized[1] == 0.0);

    CHECK_THROWS_AS(compose({1}, {1, 2}, {1}, {1}), std::invalid_argument);
}

TEST_CASE("box_smooth: zero width is the identity, otherwise a moving mean") {
    auto p = profile_from_scores({0, 0, 6, 0, 0, 0});
    const auto same = box_smooth(p, 0.0, 30.0);
    CHECK(same.fused == p.fused);

    // width 3 at fps 1: radius 1 moving average
    const auto sm = box_smooth(p, 3.0, 1.0);
    CHECK(sm.fused[1] == 2.0);
    CHECK(sm.fused[2] == 2.0);
    CHECK(sm.fused[3] == 2.0);
    CHECK(sm.fused[0] == 0.0);
    CHECK(sm.normalized[2] == 1.0);
}

TEST_CASE("percentile with linear interpolation") {
    CHECK(percentile({1, 2, 3, 4}, 50) == 2.5);
    CHECK(percentile({1, 2, 3, 4, 5}, 50) == 3.0);
    CHECK(percentile({4, 1, 3, 2}, 75) == doctest::Approx(3.25).epsilon(1e-12));
    CHECK(percentile({7}, 75) == 7.0);
    CHECK_THROWS_AS(percentile({}, 50), std::invalid_argument);
    CHECK_THROWS_AS(percentile({1.0}, 0.0), ConfigError);
}

TEST_CASE("segment: all-zero profile is one non-relevant span") {
    const auto p = profile_from_scores(std::vector<double>(100, 0.0));
    const auto segs = segment(p, 75, 1.0, 30.0);
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].start_frame == 0);
    CHECK(segs[0].end_frame == 99);
    CHECK(segs[0].label == SegmentLabel::NonRelevant);
}

TEST_CASE("segment: step profile splits at the step") {
    std::vector<double> s(1000, 0.0);
    for (int i = 100; i <= 200; ++i) s[i] = 1.0;
    const auto segs = segment(profile_from_scores(s), 75, 1.0, 30.0);
    REQUIRE(segs.size() == 3);
    CHECK(segs[0].label == SegmentLabel::NonRelevant);
    CHECK(segs[0].end_frame == 99);
    CHECK(segs[1].label == SegmentLabel::Relevant);
    CHECK(segs[1].start_frame == 100);
    CHECK(segs[1].end_frame == 200);
    CHECK(segs[2].start_frame == 201);
    CHECK(segs[2].end_frame == 999);
}

TEST_CASE("segment: sub-second sawtooth spikes merge away") {
    // 10 fps, min 1 s: spikes of 3 frames every 50 frames cannot survive.
    std::vector<double> s(500, 0.0);
    for (int i = 25; i < 500; i += 50)
        for (int k = 0; k < 3; ++k) s[i + k] = 1.0;
    const auto segs = segment(profile_from_scores(s), 75, 1.0, 10.0);
    const auto oracle = oracle_segment(profile_from_scores(s).normalized, 75, 10);
    REQUIRE(segs.size() == oracle.size());
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].label == SegmentLabel::NonRelevant);
}

TEST_CASE("segment matches the run-length oracle on random profiles") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = testutil::uint_in(rng, 20, 400);
        std::vector<double> s(n, 0.0);
        // random bursts of activity
        int i = 0;
        while (i < n) {
            if (testutil::u01(rng) < 0.3) {
                const int len = testutil::uint_in(rng, 1, 40);
                const double v = testutil::ureal(rng, 0.1, 2.0);
                for (int k = i; k < std::min(n, i + len); ++k)
                    s[k] = v * testutil::ureal(rng, 0.8, 1.2);
                i += len;
            } else {
                i += testutil::uint_in(rng, 1, 30);
            }
        }
        const auto p = profile_from_scores(s);
        const double fps = 10.0;
        const double min_seg_s = 1.0;
        const auto segs = segment(p, 75, min_seg_s, fps);
        const auto oracle = oracle_segment(p.normalized, 75, 10);
        REQUIRE(segs.size() == oracle.size());
        for (size_t k = 0; k < segs.size(); ++k) {
            CHECK(segs[k].start_frame == oracle[k].start_frame);
            CHECK(segs[k].end_frame == oracle[k].end_frame);
            CHECK(segs[k].label == oracle[k].label);
        }

        // tiling and minimum length
        CHECK(segs.front().start_frame == 0);
        CHECK(segs.back().end_frame == n - 1);
        for (size_t k = 1; k < segs.size(); ++k)
            CHECK(segs[k].start_frame == segs[k - 1].end_frame + 1);
        if (segs.size() > 1)
            for (const auto& sg : segs) CHECK(sg.length() >= 10);
    }
}

TEST_CASE("segment labels are invariant under positive scaling of S") {
    std::mt19937_64 rng(53);
    std::vector<double> s(300);
    for (auto& x : s) x = testutil::u01(rng) < 0.5 ? 0.0 : testutil::ureal(rng, 0.01, 3.0);
    const auto base = segment(profile_from_scores(s), 75, 1.0, 30.0);
    for (double c : {0.25, 2.0, 1024.0}) {
        std::vector<double> scaled = s;
        for (auto& x : scaled) x *= c;
        const auto segs = segment(profile_from_scores(scaled), 75, 1.0, 30.0);
        REQUIRE(segs.size() == base.size());
        for (size_t k = 0; k < segs.size(); ++k) {
            CHECK(segs[k].start_frame == base[k].start_frame);
            CHECK(segs[k].label == base[k].label);
        }
    }
}

TEST_CASE("segment rejects bad input") {
    CHECK_THROWS_AS(segment(SemanticProfile{}, 75, 1.0, 30.0), std::invalid_argument);
    const auto p = profile_from_scores({1.0, 0.0});
    CHECK_THROWS_AS(segment(p, 75, 0.0, 30.0), ConfigError);
}
