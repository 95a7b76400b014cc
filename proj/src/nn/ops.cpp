/* Copyright (c) 2026 The signaddr Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include "signaddr/nn/ops.hpp"

#include <cmath>
#include <cstring>
#include <memory>

#include "signaddr/core/error.hpp"
#include "signaddr/kernels/kernels.hpp"

namespace signaddr::nn {

namespace ks = signaddr::kernels;

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw DomainError(what);
}

int isz(std::size_t n) { return static_cast<int>(n); }

}  // namespace

Var constant(Tensor v) { return make_leaf(std::move(v), false); }

Var matmul(const Var& a, const Var& b) {
  require(a->value.rank() == 2 && b->value.rank() == 2, "matmul expects matrices");
  const int m = a->value.rows(), k = a->value.cols(), n = b->value.cols();
  require(b->value.rows() == k, "matmul inner dimensions differ");
  Tensor out({m, n});
  ks::gemm_nn(a->value.data(), b->value.data(), out.data(), m, k, n, false);
  return make_node(std::move(out), {a, b}, [m, k, n](Node& self) {
    const float* g = self.grad.data();
    Node* na = self.inputs[0].get();
    Node* nb = self.inputs[1].get();
    if (na->requires_grad) {
      ks::gemm_nt(g, nb->value.data(), na->grad_buffer().data(), m, n, k, true);
    }
    if (nb->requires_grad) {
      ks::gemm_tn(na->value.data(), g, nb->grad_buffer().data(), k, m, n, true);
    }
  });
}

Var add(const Var& a, const Var& b) {
  require(a->value.same_shape(b->value), "add shape mismatch");
  Tensor out = Tensor::zeros_like(a->value);
  ks::vadd(a->value.data(), b->value.data(), out.data(), isz(out.size()));
  return make_node(std::move(out), {a, b}, [](Node& self) {
    const int n = isz(self.grad.size());
    for (int which = 0; which < 2; ++which) {
      Node* in = self.inputs[static_cast<std::size_t>(which)].get();
      if (in->requires_grad) ks::axpy(1.0f, self.grad.data(), in->grad_buffer().data(), n);
    }
  });
}

Var sub(const Var& a, const Var& b) {
  require(a->value.same_shape(b->value), "sub shape mismatch");
  Tensor out = Tensor::zeros_like(a->value);
  ks::vsub(a->value.data(), b->value.data(), out.data(), isz(out.size()));
  return make_node(std::move(out), {a, b}, [](Node& self) {
    const int n = isz(self.grad.size());
    if (self.inputs[0]->requires_grad) ks::axpy(1.0f, self.grad.data(), self.inputs[0]->grad_buffer().data(), n);
    if (self.inputs[1]->requires_grad) ks::axpy(-1.0f, self.grad.data(), self.inputs[1]->grad_buffer().data(), n);
  });
}

Var mul(const Var& a, const Var& b) {
  require(a->value.same_shape(b->value), "mul shape mismatch");
  Tensor out = Tensor::zeros_like(a->value);
  ks::vmul(a->value.data(), b->value.data(), out.data(), isz(out.size()));
  return make_node(std::move(out), {a, b}, [](Node& self) {
    const int n = isz(self.grad.size());
    Node* na = self.inputs[0].get();
    Node* nb = self.inputs[1].get();
    if (na->requires_grad) ks::vmuladd(self.grad.data(), nb->value.data(), na->grad_buffer().data(), n);
    if (nb->requires_grad) ks::vmuladd(self.grad.data(), na->value.data(), nb->grad_buffer().data(), n);
  });
}

Var add_rowvec(const Var& a, const Var& bias) {
  require(a->value.rank() == 2 && bias->value.rank() == 2 && bias->value.rows() == 1,
          "add_rowvec expects matrix plus row vector");
  const int m = a->value.rows(), n = a->value.cols();
  require(bias->value.cols() == n, "add_rowvec width mismatch");
  Tensor out({m, n});
  for (int i = 0; i < m; ++i) ks::vadd(a->value.row(i), bias->value.data(), out.row(i), n);
  return make_node(std::move(out), {a, bias}, [m, n](Node& self) {
    Node* na = self.inputs[0].get();
    Node* nb = self.inputs[1].get();
    if (na->requires_grad) ks::axpy(1.0f, self.grad.data(), na->grad_buffer().data(), m * n);
    if (nb->requires_grad) {
      float* gb = nb->grad_buffer().data();
      for (int i = 0; i < m; ++i) ks::axpy(1.0f, self.grad.row(i), gb, n);
    }
  });
}

Var scale(const Var& a, float k) {
  Tensor out = Tensor::zeros_like(a->value);
  ks::vscale(a->value.data(), k, out.data(), isz(out.size()));
  return make_node(std::move(out), {a}, [k](Node& self) {
    if (self.inputs[0]->requires_grad) {
      ks::axpy(k, self.grad.data(), self.inputs[0]->grad_buffer().data(), isz(self.grad.size()));
    }
  });
}

Var tanh_op(const Var& a) {
  Tensor out = Tensor::zeros_like(a->value);
  ks::vtanh(a->value.data(), out.data(), isz(out.size()));
  return make_node(std::move(out), {a}, [](Node& self) {
    if (!self.inputs[0]->requires_grad) return;
    const float* y = self.value.data();
    const float* g = self.grad.data();
    float* ga = self.inputs[0]->grad_buffer().data();
    const std::size_t n = self.value.size();
    for (std::size_t i = 0; i < n; ++i) ga[i] += g[i] * (1.0f - y[i] * y[i]);
  });
}

Var sigmoid_op(const Var& a) {
  Tensor out = Tensor::zeros_like(a->value);
  ks::vsigmoid(a->value.data(), out.data(), isz(out.size()));
  return make_node(std::move(out), {a}, [](Node& self) {
    if (!self.inputs[0]->requires_grad) return;
    const float* y = self.value.data();
    const float* g = self.grad.data();
    float* ga = self.inputs[0]->grad_buffer().data();
    const std::size_t n = self.value.size();
    for (std::size_t i = 0; i < n; ++i) ga[i] += g[i] * y[i] * (1.0f - y[i]);
  });
}

Var relu_op(const Var& a) {
  Tensor out = Tensor::zeros_like(a->value);
  ks::vrelu(a->value.data(), out.data(), isz(out.size()));
  return make_node(std::move(out), {a}, [](Node& self) {
    if (!self.inputs[0]->requires_grad) return;
    const float* y = self.value.data();
    const float* g = self.grad.data();
    float* ga = self.inputs[0]->grad_buffer().data();
    const std::size_t n = self.value.size();
    for (std::size_t i = 0; i < n; ++i) ga[i] += y[i] > 0.0f ? g[i] : 0.0f;
  });
}

Var softmax_rows(const Var& a) {
  require(a->value.rank() == 2, "softmax_rows expects a matrix");
  const int m = a->value.rows(), n = a->value.cols();
  Tensor out({m, n});
  for (int i = 0; i < m; ++i) ks::softmax(a->value.row(i), out.row(i), n);
  return make_node(std::move(out), {a}, [m, n](Node& self) {
    if (!self.inputs[0]->requires_grad) return;
    float* ga = self.inputs[0]->grad_buffer().data();
    for (int i = 0; i < m; ++i) {
      const float* y = self.value.row(i);
      const float* g = self.grad.row(i);
      const float s = ks::dot(g, y, n);
      float* grow = ga + static_cast<std::size_t>(i) * n;
      for (int j = 0; j < n; ++j) grow[j] += (g[j] - s) * y[j];
    }
  });
}

Var cross_entropy_rows(const Var& logits, const std::vector<int>& targets) {
  require(logits->value.rank() == 2, "cross_entropy expects a matrix");
  const int m = logits->value.rows(), n = logits->value.cols();
  require(isz(targets.size()) == m, "cross_entropy target count mismatch");
  auto probs = std::make_shared<Tensor>(Tensor({m, n}));
  double loss = 0.0;
  for (int i = 0; i < m; ++i) {
    ks::softmax(logits->value.row(i), probs->row(i), n);
    const int t = targets[static_cast<std::size_t>(i)];
    require(t >= 0 && t < n, "cross_entropy target out of range");
    loss -= std::log(std::max(static_cast<double>((*probs)(i, t)), 1e-300));
  }
  Tensor out = Tensor::scalar(static_cast<float>(loss / m));
  std::vector<int> tcopy = targets;
  return make_node(std::move(out), {logits}, [probs, tcopy, m, n](Node& self) {
    if (!self.inputs[0]->requires_grad) return;
    const float gout = self.grad[0] / static_cast<float>(m);
    float* gl = self.inputs[0]->grad_buffer().data();
    for (int i = 0; i < m; ++i) {
      const float* p = probs->row(i);
      float* grow = gl + static_cast<std::size_t>(i) * n;
      for (int j = 0; j < n; ++j) grow[j] += gout * p[j];
      grow[tcopy[static_cast<std::size_t>(i)]] -= gout;
    }
  });
}

Var concat_cols(const Var& a, const Var& b) {
  require(a->value.rank() == 2 && b->value.rank() == 2 && a->value.rows() == b->value.rows(),
          "concat_cols row mismatch");
  const int m = a->value.rows(), na = a->value.cols(), nb = b->value.cols();
  Tensor out({m, na + nb});
  for (int i = 0; i < m; ++i) {
    std::memcpy(out.row(i), a->value.row(i), sizeof(float) * static_cast<std::size_t>(na));
    std::memcpy(out.row(i) + na, b->value.row(i), sizeof(float) * static_cast<std::size_t>(nb));
  }
  return make_node(std::move(out), {a, b}, [m, na, nb](Node& self) {
    Node* xa = self.inputs[0].get();
    Node* xb = self.inputs[1].get();
    for (int i = 0; i < m; ++i) {
      const float* g = self.grad.row(i);
      if (xa->requires_grad) ks::axpy(1.0f, g, xa->grad_buffer().row(i), na);
      if (xb->requires_grad) ks::axpy(1.0f, g + na, xb->grad_buffer().row(i), nb);
    }
  });
}

Var concat_rows(const std::vector<Var>& parts) {
  require(!parts.empty(), "concat_rows needs at least one part");
  const int n = parts[0]->value.cols();
  int m = 0;
  for (const Var& p : parts) {
    require(p->value.rank() == 2 && p->value.cols() == n, "concat_rows width mismatch");
    m += p->value.rows();
  }
  Tensor out({m, n});
  int r = 0;
  for (const Var& p : parts) {
    std::memcpy(out.row(r), p->value.data(), sizeof(float) * p->value.size());
    r += p->value.rows();
  }
  std::vector<Var> inputs = parts;
  return make_node(std::move(out), std::move(inputs), [n](Node& self) {
    int r = 0;
    for (const Var& in : self.inputs) {
      const int rows = in->value.rows();
      if (in->requires_grad) {
        ks::axpy(1.0f, self.grad.row(r), in->grad_buffer().data(), rows * n);
      }
      r += rows;
    }
  });
}

Var slice_cols(const Var& a, int c0, int c1) {
  require(a->value.rank() == 2 && 0 <= c0 && c0 < c1 && c1 <= a->value.cols(), "bad column slice");
  const int m = a->value.rows(), w = c1 - c0;
  Tensor out({m, w});
  for (int i = 0; i < m; ++i) {
    std::memcpy(out.row(i), a->value.row(i) + c0, sizeof(float) * static_cast<std::size_t>(w));
  }
  return make_node(std::move(out), {a}, [m, w, c0](Node& self) {
    if (!self.inputs[0]->requires_grad) return;
    Tensor& ga = self.inputs[0]->grad_buffer();
    for (int i = 0; i < m; ++i) ks::axpy(1.0f, self.grad.row(i), ga.row(i) + c0, w);
  });
}

Var slice_rows(const Var& a, int r0, int r1) {
  require(a->value.rank() == 2 && 0 <= r0 && r0 < r1 && r1 <= a->value.rows(), "bad row slice");
  const int n = a->value.cols(), h = r1 - r0;
  Tensor out({h, n});
  std::memcpy(out.data(), a->value.row(r0), sizeof(float) * out.size());
  return make_node(std::move(out), {a}, [n, h, r0](Node& self) {
    if (!self.inputs[0]->requires_grad) return;
    ks::axpy(1.0f, self.grad.data(), self.inputs[0]->grad_buffer().row(r0), h * n);
  });
}

Var transpose(const Var& a) {
  require(a->value.rank() == 2, "transpose expects a matrix");
  const int m = a->value.rows(), n = a->value.cols();
  Tensor out({n, m});
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) out(j, i) = a->value(i, j);
  }
  return make_node(std::move(out), {a}, [m, n](Node& self) {
    if (!self.inputs[0]->requires_grad) return;
    Tensor& ga = self.inputs[0]->grad_buffer();
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < m; ++i) ga(i, j) += self.grad(j, i);
    }
  });
}

Var reshape(const Var& a, std::vector<int> shape) {
  Tensor out(shape);
  require(out.size() == a->value.size(), "reshape size mismatch");
  std::memcpy(out.data(), a->value.data(), sizeof(float) * out.size());
  return make_node(std::move(out), {a}, [](Node& self) {
    if (!self.inputs[0]->requires_grad) return;
    ks::axpy(1.0f, self.grad.data(), self.inputs[0]->grad_buffer().data(), isz(self.grad.size()));
  });
}

Var embedding_rows(const Var& table, const std::vector<int>& ids) {
  require(table->value.rank() == 2, "embedding table must be a matrix");
  const int d = table->value.cols();
  Tensor out({isz(ids.size()), d});
  for (std::size_t i = 0; i < ids.size(); ++i) {
    require(ids[i] >= 0 && ids[i] < table->value.rows(), "embedding id out of range");
    std::memcpy(out.row(isz(i)), table->value.row(ids[i]), sizeof(float) * static_cast<std::size_t>(d));
  }
  std::vector<int> idcopy = ids;
  return make_node(std::move(out), {table}, [idcopy, d](Node& self) {
    if (!self.inputs[0]->requires_grad) return;
    Tensor& gt = self.inputs[0]->grad_buffer();
    for (std::size_t i = 0; i < idcopy.size(); ++i) {
      ks::axpy(1.0f, self.grad.row(isz(i)), gt.row(idcopy[i]), d);
    }
  });
}

Var layer_norm_rows(const Var& x, const Var& gain, const Var& bias, float eps) {
  require(x->value.rank() == 2, "layer_norm expects a matrix");
  const int m = x->value.rows(), n = x->value.cols();
  require(gain->value.rows() == 1 && gain->value.cols() == n, "layer_norm gain shape");
  require(bias->value.rows() == 1 && bias->value.cols() == n, "layer_norm bias shape");
  auto xhat = std::make_shared<Tensor>(Tensor({m, n}));
  auto inv_sigma = std::make_shared<std::vector<float>>(static_cast<std::size_t>(m));
  Tensor out({m, n});
  for (int i = 0; i < m; ++i) {
    const float* row = x->value.row(i);
    const float mean = ks::vsum(row, n) / static_cast<float>(n);
    float var = 0.0f;
    for (int j = 0; j < n; ++j) {
      const float d = row[j] - mean;
      var += d * d;
    }
    var /= static_cast<float>(n);
    const float is = 1.0f / std::sqrt(var + eps);
    (*inv_sigma)[static_cast<std::size_t>(i)] = is;
    float* xh = xhat->row(i);
    float* o = out.row(i);
    const float* g = gain->value.data();
    const float* b = bias->value.data();
    for (int j = 0; j < n; ++j) {
      xh[j] = (row[j] - mean) * is;
      o[j] = xh[j] * g[j] + b[j];
    }
  }
  return make_node(std::move(out), {x, gain, bias}, [xhat, inv_sigma, m, n](Node& self) {
    Node* nx = self.inputs[0].get();
    Node* ngain = self.inputs[1].get();
    Node* nbias = self.inputs[2].get();
    for (int i = 0; i < m; ++i) {
      const float* g = self.grad.row(i);
      const float* xh = xhat->row(i);
      if (ngain->requires_grad) ks::vmuladd(g, xh, ngain->grad_buffer().data(), n);
      if (nbias->requires_grad) ks::axpy(1.0f, g, nbias->grad_buffer().data(), n);
      if (nx->requires_grad) {
        const float* gainv = ngain->value.data();
        const float is = (*inv_sigma)[static_cast<std::size_t>(i)];
        float sum_dxhat = 0.0f, sum_dxhat_xhat = 0.0f;
        for (int j = 0; j < n; ++j) {
          const float dxh = g[j] * gainv[j];
          sum_dxhat += dxh;
          sum_dxhat_xhat += dxh * xh[j];
        }
        const float inv_n = 1.0f / static_cast<float>(n);
        float* gx = nx->grad_buffer().row(i);
        for (int j = 0; j < n; ++j) {
          const float dxh = g[j] * gainv[j];
          gx[j] += is * (dxh - inv_n * sum_dxhat - xh[j] * inv_n * sum_dxhat_xhat);
        }
      }
    }
  });
}

Var sum_all(const Var& a) {
  Tensor out = Tensor::scalar(ks::vsum(a->value.data(), isz(a->value.size())));
  return make_node(std::move(out), {a}, [](Node& self) {
    if (!self.inputs[0]->requires_grad) return;
    Tensor& ga = self.inputs[0]->grad_buffer();
    const float g = self.grad[0];
    for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += g;
  });
}

Var mean_all(const Var& a) { return scale(sum_all(a), 1.0f / static_cast<float>(a->value.size())); }

namespace {

// im2col for 3x3 same-padding convolution: col is [IC*9 x H*W].
void im2col_3x3(const Tensor& x, int c_in, int h, int w, Tensor& col) {
  const int hw = h * w;
  for (int c = 0; c < c_in; ++c) {
    const float* plane = x.data() + static_cast<std::size_t>(c) * hw;
    for (int ky = -1; ky <= 1; ++ky) {
      for (int kx = -1; kx <= 1; ++kx) {
        float* dst = col.data() + static_cast<std::size_t>((c * 9 + (ky + 1) * 3 + (kx + 1))) * hw;
        for (int y = 0; y < h; ++y) {
          const int sy = y + ky;
          float* drow = dst + static_cast<std::size_t>(y) * w;
          if (sy < 0 || sy >= h) {
            std::memset(drow, 0, sizeof(float) * static_cast<std::size_t>(w));
            continue;
          }
          const float* srow = plane + static_cast<std::size_t>(sy) * w;
          for (int xx = 0; xx < w; ++xx) {
            const int sx = xx + kx;
            drow[xx] = (sx < 0 || sx >= w) ? 0.0f : srow[sx];
          }
        }
      }
    }
  }
}

void col2im_3x3_acc(const Tensor& dcol, int c_in, int h, int w, Tensor& dx) {
  const int hw = h * w;
  for (int c = 0; c < c_in; ++c) {
    float* plane = dx.data() + static_cast<std::size_t>(c) * hw;
    for (int ky = -1; ky <= 1; ++ky) {
      for (int kx = -1; kx <= 1; ++kx) {
        const float* src = dcol.data() + static_cast<std::size_t>((c * 9 + (ky + 1) * 3 + (kx + 1))) * hw;
        for (int y = 0; y < h; ++y) {
          const int sy = y + ky;
          if (sy < 0 || sy >= h) continue;
          const float* srow = src + static_cast<std::size_t>(y) * w;
          float* drow = plane + static_cast<std::size_t>(sy) * w;
          for (int xx = 0; xx < w; ++xx) {
            const int sx = xx + kx;
            if (sx >= 0 && sx < w) drow[sx] += srow[xx];
          }
        }
      }
    }
  }
}

}  // namespace

Var conv2d(const Var& x, const Var& w, const Var& b) {
  require(x->value.rank() == 3, "conv2d input must be (C,H,W)");
  require(w->value.rank() == 4 && w->value.dim(2) == 3 && w->value.dim(3) == 3,
          "conv2d expects 3x3 kernels");
  const int c_in = x->value.dim(0), h = x->value.dim(1), ww = x->value.dim(2);
  const int c_out = w->value.dim(0);
  require(w->value.dim(1) == c_in, "conv2d channel mismatch");
  require(b->value.size() == static_cast<std::size_t>(c_out), "conv2d bias size");
  const int hw = h * ww;
  const int ck = c_in * 9;

  auto col = std::make_shared<Tensor>(Tensor({ck, hw}));
  im2col_3x3(x->value, c_in, h, ww, *col);

  Tensor out({c_out, h, ww});
  ks::gemm_nn(w->value.data(), col->data(), out.data(), c_out, ck, hw, false);
  for (int oc = 0; oc < c_out; ++oc) {
    float* plane = out.data() + static_cast<std::size_t>(oc) * hw;
    const float bias_v = b->value[static_cast<std::size_t>(oc)];
    for (int i = 0; i < hw; ++i) plane[i] += bias_v;
  }

  return make_node(std::move(out), {x, w, b}, [col, c_in, h, ww, c_out, ck, hw](Node& self) {
    Node* nx = self.inputs[0].get();
    Node* nw = self.inputs[1].get();
    Node* nb = self.inputs[2].get();
    const float* gy = self.grad.data();  // [c_out x hw]
    if (nb->requires_grad) {
      float* gb = nb->grad_buffer().data();
      for (int oc = 0; oc < c_out; ++oc) {
        gb[oc] += ks::vsum(gy + static_cast<std::size_t>(oc) * hw, hw);
      }
    }
    if (nw->requires_grad) {
      // dW[oc, ck] += dY[oc, hw] * col^T
      ks::gemm_nt(gy, col->data(), nw->grad_buffer().data(), c_out, hw, ck, true);
    }
    if (nx->requires_grad) {
      Tensor dcol({ck, hw});
      ks::gemm_tn(nw->value.data(), gy, dcol.data(), ck, c_out, hw, false);
      col2im_3x3_acc(dcol, c_in, h, ww, nx->grad_buffer());
    }
  });
}

Var maxpool2d(const Var& x, int pool_h, int pool_w) {
  require(x->value.rank() == 3, "maxpool2d input must be (C,H,W)");
  const int c = x->value.dim(0), h = x->value.dim(1), w = x->value.dim(2);
  require(h % pool_h == 0 && w % pool_w == 0, "maxpool2d needs exact tiling");
  const int oh = h / pool_h, ow = w / pool_w;
  Tensor out({c, oh, ow});
  auto argmax = std::make_shared<std::vector<int>>(static_cast<std::size_t>(c) * oh * ow);
  std::size_t oi = 0;
  for (int cc = 0; cc < c; ++cc) {
    const float* plane = x->value.data() + static_cast<std::size_t>(cc) * h * w;
    for (int y = 0; y < oh; ++y) {
      for (int xx = 0; xx < ow; ++xx, ++oi) {
        float best = -3.4e38f;
        int best_idx = 0;
        for (int py = 0; py < pool_h; ++py) {
          for (int px = 0; px < pool_w; ++px) {
            const int idx = (y * pool_h + py) * w + (xx * pool_w + px);
            if (plane[idx] > best) {
              best = plane[idx];
              best_idx = idx;
            }
          }
        }
        out[oi] = best;
        (*argmax)[oi] = cc * h * w + best_idx;
      }
    }
  }
  return make_node(std::move(out), {x}, [argmax](Node& self) {
    if (!self.inputs[0]->requires_grad) return;
    Tensor& gx = self.inputs[0]->grad_buffer();
    for (std::size_t i = 0; i < argmax->size(); ++i) {
      gx[static_cast<std::size_t>((*argmax)[i])] += self.grad[i];
    }
  });
}

Var frames_from_conv(const Var& x) {
  require(x->value.rank() == 3, "frames_from_conv input must be (C,H,W)");
  const int c = x->value.dim(0), h = x->value.dim(1), w = x->value.dim(2);
  Tensor out({w, c * h});
  for (int t = 0; t < w; ++t) {
    float* row = out.row(t);
    for (int cc = 0; cc < c; ++cc) {
      for (int r = 0; r < h; ++r) {
        row[cc * h + r] = x->value[static_cast<std::size_t>((cc * h + r)) * w + t];
      }
    }
  }
  return make_node(std::move(out), {x}, [c, h, w](Node& self) {
    if (!self.inputs[0]->requires_grad) return;
    Tensor& gx = self.inputs[0]->grad_buffer();
    for (int t = 0; t < w; ++t) {
      const float* row = self.grad.row(t);
      for (int cc = 0; cc < c; ++cc) {
        for (int r = 0; r < h; ++r) {
          gx[static_cast<std::size_t>((cc * h + r)) * w + t] += row[cc * h + r];
        }
      }
    }
  });
}

}  // namespace signaddr::nn
