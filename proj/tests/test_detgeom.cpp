#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "signaddr/core/error.hpp"
#include "signaddr/core/error.hpp"
#include "signaddr/core/io.hpp"
#include "signaddr/core/rng.hpp"
#include "signaddr/detgeom/adapter.hpp"
#include "signaddr/detgeom/detgeom.hpp"
#include "signaddr/detgeom/evaluate.hpp"
#include "signaddr/detgeom/yolo_io.hpp"

using namespace signaddr;
using namespace signaddr::detgeom;

namespace {

BoundingBox from_corners(double x0, double y0, double x1, double y1) {
  return BoundingBox{(x0 + x1) / 2.0, (y0 + y1) / 2.0, x1 - x0, y1 - y0};
}

BoundingBox random_box(core::Rng& rng) {
  BoundingBox box;
  box.cx = rng.uniform(0.0, 1.0);
  box.cy = rng.uniform(0.0, 1.0);
  box.w = rng.uniform(0.05, 1.0);
  box.h = rng.uniform(0.05, 1.0);
  return box;
}

}  // namespace

TEST_CASE("iou fixtures") {
  const BoundingBox b{0.5, 0.5, 0.4, 0.2};
  CHECK(iou(b, b) == doctest::Approx(1.0));

  // corners (0,0,1,1) vs (2,2,3,3), scaled into the unit frame by 1/4
  const BoundingBox a1 = from_corners(0.0, 0.0, 0.25, 0.25);
  const BoundingBox a2 = from_corners(0.5, 0.5, 0.75, 0.75);
  CHECK(iou(a1, a2) == doctest::Approx(0.0));

  // corners (0,0,2,2) vs (1,1,3,3) scaled by 1/4: overlap 1, union 7
  const BoundingBox c1 = from_corners(0.0, 0.0, 0.5, 0.5);
  const BoundingBox c2 = from_corners(0.25, 0.25, 0.75, 0.75);
  CHECK(iou(c1, c2) == doctest::Approx(1.0 / 7.0).epsilon(1e-12));

  CHECK_THROWS_AS(iou(BoundingBox{0.5, 0.5, 0.0, 0.1}, b), DomainError);
}

TEST_CASE("iou is symmetric and bounded on random boxes") {
  core::Rng rng(31);
  for (int i = 0; i < 2000; ++i) {
    const BoundingBox a = random_box(rng), b = random_box(rng);
    const double ab = iou(a, b), ba = iou(b, a);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0 + 1e-12);
    CHECK(iou(a, a) == doctest::Approx(1.0));
  }
}

TEST_CASE("match_detections fixtures") {
  const BoundingBox box{0.5, 0.5, 0.2, 0.2};
  const GroundTruthAnnotation gt{box, 0, "img"};

  SUBCASE("one exact prediction") {
    const MatchResult m = match_detections({{box, 0, 0.9}}, {gt}, 0.5);
    CHECK(m.true_positives == 1);
    CHECK(m.false_positives == 0);
    CHECK(m.false_negatives == 0);
    REQUIRE(m.matched_gt.size() == 1);
    CHECK(m.matched_gt[0] == 0);
  }
  SUBCASE("no predictions, two ground truths") {
    const GroundTruthAnnotation gt2{{0.2, 0.2, 0.1, 0.1}, 0, "img"};
    const MatchResult m = match_detections({}, {gt, gt2}, 0.5);
    CHECK(m.true_positives == 0);
    CHECK(m.false_positives == 0);
    CHECK(m.false_negatives == 2);
  }
  SUBCASE("duplicate detections over one ground truth") {
    const MatchResult m = match_detections({{box, 0, 0.9}, {box, 0, 0.8}}, {gt}, 0.5);
    CHECK(m.true_positives == 1);
    CHECK(m.false_positives == 1);
    CHECK(m.false_negatives == 0);
    CHECK(m.matched_gt[0] == 0);
    CHECK_FALSE(m.matched_gt[1].has_value());
  }
  SUBCASE("class mismatch never matches") {
    const MatchResult m = match_detections({{box, 1, 0.9}}, {gt}, 0.5);
    CHECK(m.true_positives == 0);
    CHECK(m.false_positives == 1);
    CHECK(m.false_negatives == 1);
  }
}

TEST_CASE("match_detections equals the enumeration oracle on random instances") {
  core::Rng rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    const int np = static_cast<int>(rng.uniform_int(0, 4));
    const int ng = static_cast<int>(rng.uniform_int(0, 4));
    std::vector<Detection> preds;
    std::vector<GroundTruthAnnotation> gts;
    std::vector<testutil::RefDet> ref_preds, ref_gts;
    // distinct confidences so the greedy order is unambiguous
    std::vector<double> confs;
    for (int i = 0; i < np; ++i) confs.push_back((i + 1) / 10.0 + rng.uniform(0.0, 0.04));
    for (int i = 0; i < np; ++i) {
      const BoundingBox box = random_box(rng);
      const int cls = static_cast<int>(rng.uniform_int(0, 1));
      preds.push_back({box, cls, confs[static_cast<std::size_t>(i)]});
      ref_preds.push_back({{box.cx, box.cy, box.w, box.h}, cls, confs[static_cast<std::size_t>(i)]});
    }
    for (int i = 0; i < ng; ++i) {
      const BoundingBox box = random_box(rng);
      const int cls = static_cast<int>(rng.uniform_int(0, 1));
      gts.push_back({box, cls, "img"});
      ref_gts.push_back({{box.cx, box.cy, box.w, box.h}, cls, 1.0});
    }
    const MatchResult got = match_detections(preds, gts, 0.5);
    const testutil::RefMatch expected = testutil::match_reference(ref_preds, ref_gts, 0.5);
    CHECK(got.true_positives == expected.tp);
    CHECK(got.false_positives == expected.fp);
    CHECK(got.false_negatives == expected.fn);
  }
}

TEST_CASE("precision, recall, f1") {
  CHECK(precision_recall({1, 0, 0, {}}) == std::pair{1.0, 1.0});
  CHECK(precision_recall({0, 3, 2, {}}) == std::pair{0.0, 0.0});
  const auto [p, r] = precision_recall({2, 1, 2, {}});
  CHECK(p == doctest::Approx(2.0 / 3.0));
  CHECK(r == doctest::Approx(0.5));

  CHECK(f1_score(1.0, 1.0) == doctest::Approx(1.0));
  CHECK(f1_score(0.0, 0.7) == doctest::Approx(0.0));
  CHECK(f1_score(0.5, 1.0) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("average precision fixtures") {
  const BoundingBox g1{0.25, 0.25, 0.2, 0.2};
  const BoundingBox g2{0.75, 0.75, 0.2, 0.2};
  const std::vector<GroundTruthAnnotation> gts = {{g1, 0, "img"}, {g2, 0, "img"}};

  SUBCASE("single perfect prediction per ground truth") {
    const std::vector<Detection> preds = {{g1, 0, 0.9}, {g2, 0, 0.8}};
    CHECK(average_precision(preds, gts, 0.5) == doctest::Approx(1.0));
  }
  SUBCASE("TP, FP, TP ranking gives 5/6") {
    const BoundingBox far{0.5, 0.1, 0.05, 0.05};
    const std::vector<Detection> preds = {{g1, 0, 0.9}, {far, 0, 0.8}, {g2, 0, 0.7}};
    CHECK(average_precision(preds, gts, 0.5) == doctest::Approx(5.0 / 6.0).epsilon(1e-9));
    CHECK(average_precision(preds, gts, 0.5, ApInterpolation::kRaw) ==
          doctest::Approx(5.0 / 6.0).epsilon(1e-9));
  }
  SUBCASE("all false positives") {
    const BoundingBox far{0.5, 0.1, 0.05, 0.05};
    const std::vector<Detection> preds = {{far, 0, 0.9}, {far, 0, 0.8}};
    CHECK(average_precision(preds, gts, 0.5) == doctest::Approx(0.0));
  }
  SUBCASE("no ground truths is a domain error") {
    CHECK_THROWS_AS(average_precision({{g1, 0, 0.9}}, {}, 0.5), DomainError);
  }
  SUBCASE("invariant under monotone confidence rescaling") {
    core::Rng rng(5);
    std::vector<Detection> preds;
    for (int i = 0; i < 6; ++i) {
      preds.push_back({random_box(rng), 0, 0.1 + 0.12 * i});
    }
    const double base = average_precision(preds, gts, 0.3);
    for (Detection& d : preds) d.confidence = 1.0 / (1.0 + std::exp(-6.0 * d.confidence));
    CHECK(average_precision(preds, gts, 0.3) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("recall along the curve is non-decreasing") {
  core::Rng rng(13);
  const std::vector<GroundTruthAnnotation> gts = {{random_box(rng), 0, "img"},
                                                  {random_box(rng), 0, "img"}};
  std::vector<Detection> preds;
  for (int i = 0; i < 8; ++i) preds.push_back({random_box(rng), 0, rng.uniform(0.1, 0.9)});
  const PrecisionRecallCurve curve = precision_recall_curve(preds, gts, 0.4);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    CHECK(curve[i].recall >= curve[i - 1].recall);
  }
}

TEST_CASE("head filter count") {
  CHECK(head_filter_count(1) == 18);
  CHECK(head_filter_count(80) == 255);
  CHECK_THROWS_AS(head_filter_count(0), DomainError);
}

TEST_CASE("yolo label io round-trips at 6 decimals") {
  testutil::TempDir tmp("yolo");
  const auto path = tmp.path() / "img001.txt";

  SUBCASE("basic fields") {
    core::write_text_file(path, "0 0.5 0.5 0.2 0.1\n");
    const auto anns = read_yolo_labels(path);
    REQUIRE(anns.size() == 1);
    CHECK(anns[0].class_id == 0);
    CHECK(anns[0].image_id == "img001");
    CHECK(anns[0].box.cx == doctest::Approx(0.5));
    CHECK(anns[0].box.h == doctest::Approx(0.1));
  }
  SUBCASE("empty file yields empty list") {
    core::write_text_file(path, "");
    CHECK(read_yolo_labels(path).empty());
  }
  SUBCASE("random boxes round-trip") {
    core::Rng rng(3);
    std::vector<GroundTruthAnnotation> anns;
    for (int i = 0; i < 100; ++i) {
      anns.push_back({random_box(rng), static_cast<int>(rng.uniform_int(0, 3)), "img001"});
    }
    write_yolo_labels(anns, path);
    const auto back = read_yolo_labels(path);
    REQUIRE(back.size() == anns.size());
    for (std::size_t i = 0; i < anns.size(); ++i) {
      CHECK(back[i].class_id == anns[i].class_id);
      CHECK(std::abs(back[i].box.cx - anns[i].box.cx) <= 5.5e-7);
      CHECK(std::abs(back[i].box.cy - anns[i].box.cy) <= 5.5e-7);
      CHECK(std::abs(back[i].box.w - anns[i].box.w) <= 5.5e-7);
      CHECK(std::abs(back[i].box.h - anns[i].box.h) <= 5.5e-7);
    }
  }
  SUBCASE("malformed line reports its number") {
    core::write_text_file(path, "0 0.5 0.5 0.2 0.1\n0 nonsense 0.5 0.2 0.1\n");
    try {
      read_yolo_labels(path);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
  }
  SUBCASE("out-of-range coordinate is a validation error") {
    core::write_text_file(path, "0 1.5 0.5 0.2 0.1\n");
    CHECK_THROWS_AS(read_yolo_labels(path), ValidationError);
  }
  SUBCASE("wrong field count is a parse error") {
    core::write_text_file(path, "0 0.5 0.5 0.2\n");
    CHECK_THROWS_AS(read_yolo_labels(path), ParseError);
  }
}

TEST_CASE("oracle adapter replays labels;constant adapter is fixed") {
  testutil::TempDir tmp("adapter");
  const BoundingBox box{0.5, 0.5, 0.5, 0.25};
  write_yolo_labels({{box, 0, "scene"}}, tmp.path() / "scene.txt");
  OracleAdapter oracle(tmp.path());
  core::Image img(40, 20);

  const auto dets = detect(oracle, img, "scene");
  REQUIRE(dets.size() == 1);
  CHECK(dets[0].confidence == doctest::Approx(1.0));
  CHECK(dets[0].box.cx == doctest::Approx(0.5));

  CHECK(detect(oracle, img, "unlabeled").empty());

  ConstantBoxAdapter constant(box, 0, 0.75);
  const auto cdets = detect(constant, img, "anything");
  REQUIRE(cdets.size() == 1);
  CHECK(cdets[0].confidence == doctest::Approx(0.75));
}

TEST_CASE("evaluation harness pools per image and writes records") {
  testutil::TempDir tmp("eval");
  const BoundingBox g1{0.25, 0.25, 0.2, 0.2};
  const BoundingBox g2{0.75, 0.75, 0.2, 0.2};
  const BoundingBox far{0.5, 0.1, 0.05, 0.05};
  std::vector<ImageEvalInput> inputs(2);
  inputs[0] = {"a", {{g1, 0, 0.9}, {far, 0, 0.8}}, {{g1, 0, "a"}, {g2, 0, "a"}}};
  inputs[1] = {"b", {{g2, 0, 0.7}}, {{g2, 0, "b"}}};
  const DetectionEvalReport report = evaluate_detections("test-model", inputs, 0.5);
  REQUIRE(report.per_class.size() == 1);
  // pooled ranking: TP(0.9), FP(0.8), TP(0.7) over 3 gts
  CHECK(report.per_class[0].ap ==
        doctest::Approx((1.0 / 3.0) * 1.0 + (1.0 / 3.0) * (2.0 / 3.0)).epsilon(1e-9));
  CHECK(report.per_class[0].recall == doctest::Approx(2.0 / 3.0));
  CHECK(report.per_class[0].precision == doctest::Approx(2.0 / 3.0));

  const auto out = tmp.path() / "report.jsonl";
  write_detection_report(report, out);
  const auto lines = core::split_lines(core::read_text_file(out));
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].find("\"model\":\"test-model\"") != std::string::npos);
  CHECK(lines[0].find("\"iou_threshold\":0.5") != std::string::npos);
}
