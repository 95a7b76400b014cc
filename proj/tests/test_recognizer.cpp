#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "helpers.hpp"
#include "signaddr/core/error.hpp"
#include "signaddr/recognizer/model.hpp"

using namespace signaddr;
using namespace signaddr::recognizer;

namespace {

std::vector<std::string> predict_all(const RecognizerModel& model,
                                     const std::vector<synthgen::TextLineSample>& data) {
  std::vector<std::string> preds;
  preds.reserve(data.size());
  for (const auto& s : data) preds.push_back(model.predict(s.image));
  return preds;
}

std::vector<std::string> texts_of(const std::vector<synthgen::TextLineSample>& data) {
  std::vector<std::string> refs;
  refs.reserve(data.size());
  for (const auto& s : data) refs.push_back(s.text);
  return refs;
}

}  // namespace

TEST_CASE("alphabet encodes and decodes with blank reserved") {
  const Alphabet alphabet = Alphabet::from_texts({"abc"});
  CHECK(alphabet.size() == 4);  // blank + a,b,c
  CHECK(alphabet.size_with_markers() == 6);
  CHECK(alphabet.id_of(U'a') == 1);
  CHECK(alphabet.decode(alphabet.encode("cab")) == "cab");
  CHECK_THROWS_AS(alphabet.id_of(U'z'), ValidationError);
  CHECK(alphabet.start_id() == 4);
  CHECK(alphabet.end_id() == 5);
}

TEST_CASE("frame count follows the stride product") {
  RecognizerConfig cfg;
  cfg.conv_channels = 2;
  cfg.hidden = 8;
  const Alphabet alphabet = Alphabet::from_texts({"0123456789"});
  RecognizerModel model(cfg, alphabet);

  core::Image line(600, 64);
  nn::Var logits = model.forward_frames(line);
  CHECK(logits->value.rows() == 150);  // 600 / 4
  CHECK(logits->value.cols() == alphabet.size());

  core::Image narrow(100, 64);
  CHECK(model.forward_frames(narrow)->value.rows() == 25);
}

TEST_CASE("frame distributions are normalized") {
  RecognizerConfig cfg;
  cfg.conv_channels = 2;
  cfg.hidden = 8;
  RecognizerModel model(cfg, Alphabet::from_texts({"01"}));
  core::Image line(40, 64);
  core::Rng rng(3);
  for (float& p : line.px) p = static_cast<float>(rng.uniform());
  const FrameDistributionSequence dist = model.frame_distributions(line);
  CHECK_NOTHROW(dist.validate());
}

TEST_CASE("normalize_line_image pads and rescales") {
  core::Image odd(33, 64);
  const core::Image padded = normalize_line_image(odd, 600);
  CHECK(padded.width == 36);
  CHECK(padded.height == 64);

  core::Image tall(100, 128);
  const core::Image scaled = normalize_line_image(tall, 600);
  CHECK(scaled.height == 64);
  CHECK(scaled.width == 52);  // 50 scaled, padded to a multiple of 4

  core::Image wide(1000, 64);
  CHECK(normalize_line_image(wide, 600).width == 600);
}

TEST_CASE("toy ctc recognizer reaches 95% WRA within 200 epochs") {
  const auto data = fixtures::toy_ocr_dataset();
  RecognizerModel model(fixtures::toy_recognizer_config(Framework::kCtc),
                        Alphabet::from_texts(fixtures::digit_texts()));
  const TrainReport report = train_recognizer(model, data);
  CHECK(report.epochs_run <= 200);
  const double wra = word_recognition_accuracy(predict_all(model, data), texts_of(data));
  CHECK(wra >= 0.95);
  MESSAGE("ctc toy convergence: ", report.epochs_run, " epochs, wra=", wra);

  SUBCASE("checkpoint round-trip preserves predictions") {
    testutil::TempDir tmp("reco");
    const auto path = tmp.path() / "reco.ckpt";
    model.save(path);
    const RecognizerModel loaded = RecognizerModel::load(path);
    for (std::size_t i = 0; i < 10; ++i) {
      CHECK(loaded.predict(data[i].image) == model.predict(data[i].image));
    }
  }
  SUBCASE("beam decoding with width 1 equals greedy on the trained model") {
    for (std::size_t i = 0; i < 10; ++i) {
      CHECK(model.predict(data[i].image, 1) == model.predict(data[i].image, 0));
      CHECK(model.predict(data[i].image, 4).size() >= 0);  // beam path exercised
    }
  }
}

TEST_CASE("toy attention recognizer reaches 90% WRA and normalized attention") {
  const auto data = fixtures::toy_ocr_dataset();
  RecognizerModel model(fixtures::toy_recognizer_config(Framework::kAttention),
                        Alphabet::from_texts(fixtures::digit_texts()));
  const TrainReport report = train_recognizer(model, data);
  CHECK(report.epochs_run <= 200);
  const double wra = word_recognition_accuracy(predict_all(model, data), texts_of(data));
  CHECK(wra >= 0.90);
  MESSAGE("attention toy convergence: ", report.epochs_run, " epochs, wra=", wra);

  std::vector<core::Tensor> attention;
  model.attention_decode(data[0].image, &attention);
  REQUIRE(!attention.empty());
  for (const core::Tensor& row : attention) {
    double sum = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      CHECK(row[i] >= 0.0f);
      sum += row[i];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-5));
  }
}

TEST_CASE("training twice from the same seed gives identical loss history") {
  auto data = fixtures::toy_ocr_dataset();
  data.resize(8);
  RecognizerConfig cfg = fixtures::toy_recognizer_config(Framework::kCtc);
  cfg.epochs = 3;
  cfg.early_stop_wra = -1.0;
  const Alphabet alphabet = Alphabet::from_texts(fixtures::digit_texts());

  RecognizerModel a(cfg, alphabet), b(cfg, alphabet);
  const TrainReport ra = train_recognizer(a, data);
  const TrainReport rb = train_recognizer(b, data);
  REQUIRE(ra.epoch_loss.size() == rb.epoch_loss.size());
  for (std::size_t i = 0; i < ra.epoch_loss.size(); ++i) {
    CHECK(ra.epoch_loss[i] == rb.epoch_loss[i]);
  }
}

TEST_CASE("unreachable samples skip or fail per config") {
  // Text longer than the frame count: a tiny image gives very few frames.
  const std::string text = "0101010101";
  const synthgen::AddressCorpus corpus = synthgen::AddressCorpus::from_entries({text});
  const synthgen::GlyphAtlas atlas = synthgen::GlyphAtlas::for_corpus(corpus);
  synthgen::RenderStyle style = fixtures::toy_render_style();
  synthgen::TextLineSample sample = synthgen::render_text_line(text, 1, style, atlas);
  sample.image = core::resize(sample.image, 8, 64);  // 2 frames only

  RecognizerConfig cfg = fixtures::toy_recognizer_config(Framework::kCtc);
  cfg.epochs = 1;
  cfg.early_stop_wra = -1.0;
  const Alphabet alphabet = Alphabet::from_texts({text});

  RecognizerModel model(cfg, alphabet);
  const TrainReport report = train_recognizer(model, {sample});
  CHECK(report.skipped_samples == 1);

  cfg.error_on_unreachable = true;
  RecognizerModel strict(cfg, alphabet);
  CHECK_THROWS_AS(train_recognizer(strict, {sample}), DomainError);
}

TEST_CASE("word recognition accuracy") {
  CHECK(word_recognition_accuracy({"ab", "cd"}, {"ab", "cd"}) == doctest::Approx(1.0));
  CHECK(word_recognition_accuracy({"xx", "yy"}, {"ab", "cd"}) == doctest::Approx(0.0));
  std::vector<std::string> preds(10, "same"), refs(10, "same");
  preds[3] = "different";
  CHECK(word_recognition_accuracy(preds, refs) == doctest::Approx(0.9));
  CHECK_THROWS_AS(word_recognition_accuracy({"a"}, {}), ValidationError);
  // token-level mode counts positional word matches
  CHECK(word_recognition_accuracy({"a b c"}, {"a x c"}, true) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("all four backbones build and emit frames") {
  const Alphabet alphabet = Alphabet::from_texts({"01"});
  core::Image line(40, 64);
  core::Rng rng(9);
  for (float& p : line.px) p = static_cast<float>(rng.uniform());
  for (const Backbone backbone :
       {Backbone::kVgg, Backbone::kRcnn, Backbone::kGrcl, Backbone::kResnet}) {
    RecognizerConfig cfg;
    cfg.backbone = backbone;
    cfg.conv_channels = 2;
    cfg.hidden = 8;
    RecognizerModel model(cfg, alphabet);
    CHECK(model.forward_frames(line)->value.rows() == 10);
  }
}
