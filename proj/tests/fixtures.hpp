// Toy training fixtures shared by the model test suites and the acceptance
// runner. Everything is deterministic under the fixed seeds used here.
#pragma once

#include <string>
#include <vector>

#include "signaddr/addrparse/model.hpp"
#include "signaddr/core/rng.hpp"
#include "signaddr/corrector/model.hpp"
#include "signaddr/recognizer/model.hpp"
#include "signaddr/synthgen/corpus.hpp"
#include "signaddr/synthgen/inject.hpp"
#include "signaddr/synthgen/render.hpp"
#include "signaddr/synthgen/tagged.hpp"

namespace fixtures {

namespace sg = signaddr::synthgen;
namespace rec = signaddr::recognizer;
namespace corr = signaddr::corrector;
namespace ap = signaddr::addrparse;

/// 50 distinct digit strings, lengths 3..6, vocabulary of 10 symbols.
inline std::vector<std::string> digit_texts() {
  signaddr::core::Rng rng(777);
  std::vector<std::string> texts;
  while (texts.size() < 50) {
    const int len = static_cast<int>(rng.uniform_int(3, 6));
    std::string t;
    for (int i = 0; i < len; ++i) {
      t += static_cast<char>('0' + rng.uniform_int(0, 9));
    }
    bool dup = false;
    for (const auto& e : texts) dup |= e == t;
    if (!dup) texts.push_back(t);
  }
  return texts;
}

inline sg::RenderStyle toy_render_style() {
  sg::RenderStyle style;
  style.font_scale = 2;
  style.noise_amplitude = 0.0f;
  style.skew = 0.0f;
  style.target_width = 0;  // natural width keeps the toy nets small
  return style;
}

inline std::vector<sg::TextLineSample> toy_ocr_dataset() {
  const auto texts = digit_texts();
  const sg::AddressCorpus corpus = sg::AddressCorpus::from_entries(texts);
  const sg::GlyphAtlas atlas = sg::GlyphAtlas::for_corpus(corpus);
  const sg::RenderStyle style = toy_render_style();
  std::vector<sg::TextLineSample> data;
  data.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    data.push_back(sg::render_text_line(texts[i], signaddr::core::Rng::mix(1, i), style, atlas));
  }
  return data;
}

inline rec::RecognizerConfig toy_recognizer_config(rec::Framework framework) {
  rec::RecognizerConfig cfg;
  cfg.framework = framework;
  cfg.backbone = rec::Backbone::kVgg;
  cfg.conv_channels = 4;
  cfg.hidden = 32;
  cfg.optimizer = "adamw";
  cfg.lr = 1e-3f;
  cfg.batch_size = 8;
  cfg.epochs = 200;
  cfg.early_stop_wra = framework == rec::Framework::kCtc ? 0.95 : 0.90;
  cfg.seed = 5;
  return cfg;
}

/// Identity pairs over a 26-symbol alphabet, 2-3 words each.
inline std::vector<sg::CorrectionPair> copy_task_pairs() {
  signaddr::core::Rng rng(555);
  std::vector<sg::CorrectionPair> pairs;
  for (int i = 0; i < 30; ++i) {
    std::string s;
    const int words = static_cast<int>(rng.uniform_int(2, 3));
    for (int w = 0; w < words; ++w) {
      if (w != 0) s += ' ';
      const int len = static_cast<int>(rng.uniform_int(2, 4));
      for (int k = 0; k < len; ++k) {
        s += static_cast<char>('a' + rng.uniform_int(0, 25));
      }
    }
    pairs.push_back({s, s, 0});
  }
  return pairs;
}

inline corr::CorrectorConfig copy_task_config() {
  corr::CorrectorConfig cfg;
  cfg.width = 32;
  cfg.heads = 2;
  cfg.ff_width = 64;
  cfg.encoder_layers = 1;
  cfg.decoder_layers = 1;
  cfg.max_seq_len = 64;
  cfg.lr = 3e-3f;
  cfg.warmup_steps = 30;
  cfg.batch_size = 8;
  cfg.epochs = 80;
  cfg.early_stop_wla = 0.99;
  cfg.seed = 3;
  return cfg;
}

/// 40 samples whose five component vocabularies are disjoint (prefix letter
/// determines the component), so token identity decides the tag.
inline std::vector<sg::TaggedAddress> parser_toy_samples() {
  signaddr::core::Rng rng(888);
  const char* prefixes[5] = {"h", "r", "a", "t", "d"};
  std::vector<sg::TaggedAddress> samples;
  for (int i = 0; i < 40; ++i) {
    sg::TaggedAddress s;
    for (int c = 0; c < 5; ++c) {
      const int span = static_cast<int>(rng.uniform_int(1, 2));
      for (int t = 0; t < span; ++t) {
        s.tokens.push_back(std::string(prefixes[c]) + std::to_string(rng.uniform_int(0, 9)));
        s.tags.push_back((t == 0 ? std::string("B-") : std::string("I-")) + sg::kComponents[c]);
      }
    }
    samples.push_back(std::move(s));
  }
  return samples;
}

inline ap::ParserConfig parser_toy_config(ap::ParserArch arch) {
  ap::ParserConfig cfg;
  cfg.architecture = arch;
  cfg.embed = 32;
  cfg.hidden = 48;
  cfg.encoder_layers = 2;
  cfg.heads = 2;
  cfg.ff_width = 64;
  cfg.lr = 2e-3f;
  cfg.warmup_steps = 30;
  cfg.batch_size = 8;
  cfg.epochs = 100;
  cfg.early_stop_token_acc = 1.0;
  cfg.seed = 4;
  return cfg;
}

}  // namespace fixtures
