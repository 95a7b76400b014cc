// Shared test utilities: independent oracles and scratch directories.
// The oracles here deliberately re-derive results from first principles and
// never call the library code paths they are used to check.
#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace testutil {

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("signaddr_" + tag + "_" + std::to_string(++counter) + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Classic O(n*m) edit distance over code points (bytes suffice for ASCII
// fixtures; UTF-8 callers pass decoded vectors).
template <typename Seq>
int levenshtein(const Seq& a, const Seq& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<int> prev(m + 1), cur(m + 1);
  std::iota(prev.begin(), prev.end(), 0);
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

// Independent run-merge + blank removal (blank = 0).
inline std::vector<int> collapse_reference(const std::vector<int>& path) {
  std::vector<int> out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] == 0) continue;
    if (i > 0 && path[i] == path[i - 1]) continue;
    out.push_back(path[i]);
  }
  return out;
}

// Enumerates all K^T paths of a [T x K] distribution table and accumulates
// probability mass per collapsed label. Exact for small T.
inline std::map<std::vector<int>, double> ctc_brute_force(const std::vector<std::vector<double>>& y) {
  const int t_len = static_cast<int>(y.size());
  const int k = static_cast<int>(y[0].size());
  std::map<std::vector<int>, double> mass;
  std::vector<int> path(static_cast<std::size_t>(t_len), 0);
  for (;;) {
    double p = 1.0;
    for (int t = 0; t < t_len; ++t) p *= y[static_cast<std::size_t>(t)][static_cast<std::size_t>(path[static_cast<std::size_t>(t)])];
    mass[collapse_reference(path)] += p;
    int pos = t_len - 1;
    while (pos >= 0) {
      if (++path[static_cast<std::size_t>(pos)] < k) break;
      path[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return mass;
}

// Corner-arithmetic IoU, independent of the library geometry code.
struct RefBox {
  double cx, cy, w, h;
};
inline double iou_reference(const RefBox& a, const RefBox& b) {
  const double ax0 = a.cx - a.w / 2, ax1 = a.cx + a.w / 2;
  const double ay0 = a.cy - a.h / 2, ay1 = a.cy + a.h / 2;
  const double bx0 = b.cx - b.w / 2, bx1 = b.cx + b.w / 2;
  const double by0 = b.cy - b.h / 2, by1 = b.cy + b.h / 2;
  const double iw = std::max(0.0, std::min(ax1, bx1) - std::max(ax0, bx0));
  const double ih = std::max(0.0, std::min(ay1, by1) - std::max(ay0, by0));
  const double inter = iw * ih;
  return inter / (a.w * a.h + b.w * b.h - inter);
}

// Greedy-by-confidence matching re-derived by explicit enumeration: walk
// detections in confidence order (stable), scan every ground truth for the
// best unconsumed same-class overlap.
struct RefDet {
  RefBox box;
  int class_id;
  double confidence;
};
struct RefMatch {
  int tp = 0, fp = 0, fn = 0;
};
inline RefMatch match_reference(const std::vector<RefDet>& preds, const std::vector<RefDet>& gts,
                                double threshold) {
  std::vector<int> order(preds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return preds[static_cast<std::size_t>(a)].confidence > preds[static_cast<std::size_t>(b)].confidence;
  });
  std::vector<bool> used(gts.size(), false);
  RefMatch result;
  for (int pi : order) {
    double best = -1.0;
    int best_gt = -1;
    for (std::size_t gi = 0; gi < gts.size(); ++gi) {
      if (used[gi] || gts[gi].class_id != preds[static_cast<std::size_t>(pi)].class_id) continue;
      const double overlap = iou_reference(preds[static_cast<std::size_t>(pi)].box, gts[gi].box);
      if (overlap > best) {
        best = overlap;
        best_gt = static_cast<int>(gi);
      }
    }
    if (best_gt >= 0 && best >= threshold) {
      used[static_cast<std::size_t>(best_gt)] = true;
      ++result.tp;
    } else {
      ++result.fp;
    }
  }
  result.fn = static_cast<int>(gts.size()) - result.tp;
  return result;
}

}  // namespace testutil
