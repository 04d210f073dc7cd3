#include <doctest.h>

#include <algorithm>

#include "gazeff/attention.hpp"
#include "test_util.hpp"

using namespace gazeff;
using testutil::ctx;
using testutil::det;
using testutil::gaze_at;

namespace {

// Independent tie-break oracle: sort candidate indices by the documented
// chain and take the front.
int oracle_pick(const FrameContext& c) {
    std::vector<int> hits;
    for (size_t i = 0; i < c.detections.size(); ++i)
        if (c.detections[i].bbox.contains(c.gaze.x, c.gaze.y)) hits.push_back(static_cast<int>(i));
    if (hits.empty()) return -1;
    std::stable_sort(hits.begin(), hits.end(), [&](int a, int b) {
        const Detection& da = c.detections[a];
        const Detection& db = c.detections[b];
        if (da.bbox.area() != db.bbox.area()) return da.bbox.area() < db.bbox.area();
        if (da.confidence != db.confidence) return da.confidence > db.confidence;
        return da.class_id < db.class_id;
    });
    return hits.front();
}

}  // namespace

TEST_CASE("resolve_focus picks the smallest containing box") {
    const auto c = ctx(0, 640, 480, gaze_at(0, 50, 50),
                       {det(0, 0, 0, 100, 100, 1), det(0, 40, 40, 20, 20, 2)});
    const auto res = resolve_focus(c);
    REQUIRE(res.focused.has_value());
    CHECK(res.focused->class_id == 2);
    CHECK(res.candidates_hit == 2);
}

TEST_CASE("resolve_focus with gaze outside every box") {
    const auto c = ctx(0, 640, 480, gaze_at(0, 500, 500), {det(0, 0, 0, 100, 100)});
    const auto res = resolve_focus(c);
    CHECK_FALSE(res.focused.has_value());
    CHECK(res.candidates_hit == 0);
}

TEST_CASE("resolve_focus ignores blink and missing frames") {
    auto c = ctx(0, 640, 480, gaze_at(0, 50, 50, GazePattern::Blink), {det(0, 0, 0, 100, 100)});
    CHECK_FALSE(resolve_focus(c).focused.has_value());
    c.gaze.pattern = GazePattern::Missing;
    CHECK_FALSE(resolve_focus(c).focused.has_value());
}

TEST_CASE("containment is closed: edge points count") {
    const auto c = ctx(0, 640, 480, gaze_at(0, 100, 50), {det(0, 0, 0, 100, 100)});
    CHECK(resolve_focus(c).focused.has_value());
}

TEST_CASE("tie-break chain matches the exhaustive oracle") {
    // Equal areas force the chain through confidence, class, then order.
    const auto equal_conf = ctx(0, 640, 480, gaze_at(0, 50, 50),
                                {det(0, 30, 30, 40, 40, 5, 0.5), det(0, 20, 20, 40, 40, 5, 0.9)});
    CHECK(resolve_focus(equal_conf).focused->confidence == 0.9);

    const auto equal_all = ctx(0, 640, 480, gaze_at(0, 50, 50),
                               {det(0, 30, 30, 40, 40, 9, 0.5), det(0, 20, 20, 40, 40, 3, 0.5)});
    CHECK(resolve_focus(equal_all).focused->class_id == 3);

    // Exhaustive small cases: every combination of area/conf/class drawn
    // from tiny value sets, gaze in the shared region.
    std::mt19937_64 rng(13);
    const double sides[] = {40, 40, 60};
    const double confs[] = {0.5, 0.9};
    const int classes[] = {1, 2};
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<Detection> dets;
        const int count = testutil::uint_in(rng, 1, 4);
        for (int i = 0; i < count; ++i) {
            const double side = sides[testutil::uint_in(rng, 0, 2)];
            dets.push_back(det(0, 50 - side / 2, 50 - side / 2, side, side,
                               classes[testutil::uint_in(rng, 0, 1)],
                               confs[testutil::uint_in(rng, 0, 1)]));
        }
        const auto c = ctx(0, 640, 480, gaze_at(0, 50, 50), dets);
        const auto res = resolve_focus(c);
        const int expect = oracle_pick(c);
        REQUIRE(res.focused.has_value());
        const Detection& want = c.detections[expect];
        CHECK(res.focused->bbox.area() == want.bbox.area());
        CHECK(res.focused->confidence == want.confidence);
        CHECK(res.focused->class_id == want.class_id);
    }
}

TEST_CASE("resolve_focus is permutation invariant for distinct keys") {
    std::vector<Detection> dets{det(0, 10, 10, 80, 80, 1, 0.9), det(0, 30, 30, 40, 40, 2, 0.8),
                                det(0, 45, 45, 10, 10, 3, 0.7)};
    std::sort(dets.begin(), dets.end(),
              [](const Detection& a, const Detection& b) { return a.class_id < b.class_id; });
    const auto base = resolve_focus(ctx(0, 640, 480, gaze_at(0, 50, 50), dets));
    do {
        const auto res = resolve_focus(ctx(0, 640, 480, gaze_at(0, 50, 50), dets));
        REQUIRE(res.focused.has_value());
        CHECK(res.focused->class_id == base.focused->class_id);
        CHECK(res.candidates_hit == base.candidates_hit);
    } while (std::next_permutation(dets.begin(), dets.end(),
                                   [](const Detection& a, const Detection& b) {
                                       return a.class_id < b.class_id;
                                   }));
}

TEST_CASE("visual_interaction levels") {
    const auto with_box = ctx(0, 640, 480, gaze_at(0, 50, 50), {det(0, 0, 0, 100, 100)});
    CHECK(visual_interaction(with_box, resolve_focus(with_box)) == 1.0);

    auto sacc = with_box;
    sacc.gaze.pattern = GazePattern::Saccade;
    CHECK(visual_interaction(sacc, resolve_focus(sacc)) == 0.5);

    const auto no_box = ctx(0, 640, 480, gaze_at(0, 500, 400), {det(0, 0, 0, 100, 100)});
    CHECK(visual_interaction(no_box, resolve_focus(no_box)) == 0.0);

    auto blink = with_box;
    blink.gaze.pattern = GazePattern::Blink;
    blink.gaze.has_position = false;
    CHECK(visual_interaction(blink, resolve_focus(blink)) == 0.0);
}

TEST_CASE("visual interaction stays in {0, 0.5, 1} on random frames") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Detection> dets;
        const int count = testutil::uint_in(rng, 0, 4);
        for (int i = 0; i < count; ++i) {
            const double w = testutil::ureal(rng, 1, 300);
            const double h = testutil::ureal(rng, 1, 200);
            dets.push_back(det(0, testutil::ureal(rng, 0, 640 - w),
                               testutil::ureal(rng, 0, 480 - h), w, h,
                               testutil::uint_in(rng, 0, 5), testutil::ureal(rng, 0, 1)));
        }
        const GazePattern pats[] = {GazePattern::Fixation, GazePattern::Saccade,
                                    GazePattern::Blink, GazePattern::Missing};
        GazeSample g = testutil::gaze_at(0, testutil::ureal(rng, 0, 640),
                                         testutil::ureal(rng, 0, 480),
                                         pats[testutil::uint_in(rng, 0, 3)]);
        if (g.pattern == GazePattern::Blink || g.pattern == GazePattern::Missing)
            g.has_position = false;
        const auto c = ctx(0, 640, 480, g, dets);
        const double v = visual_interaction(c, resolve_focus(c));
        CHECK((v == 0.0 || v == 0.5 || v == 1.0));
    }
}
