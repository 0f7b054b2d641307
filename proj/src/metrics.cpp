// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcam/metrics.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

#include "dualcam/color.hpp"
#include "dualcam/error.hpp"

namespace dualcam {
namespace {

// Neumaier compensated summation.
class Accumulator {
 public:
  void add(double v) {
    const double t = sum_ + v;
    comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
    ++n_;
  }
  double mean() const { return n_ ? (sum_ + comp_) / n_ : std::nan(""); }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  std::size_t n_ = 0;
};

std::vector<double> gaussian_window() {
  std::vector<double> g(11);
  double s = 0.0;
  for (int i = 0; i < 11; ++i) {
    const double d = i - 5;
    g[i] = std::exp(-d * d / (2.0 * 1.5 * 1.5));
    s += g[i];
  }
  for (double& v : g) v /= s;
  return g;
}

// Valid-mode separable filtering of a w x h plane into `out`; row-wise axpy
// loops so the compiler can vectorise them.
void filter_valid(const double* p, int w, int h, const std::vector<double>& g,
                  std::vector<double>& tmp, std::vector<double>& out) {
  const int ow = w - 10;
  const int oh = h - 10;
  tmp.assign(static_cast<std::size_t>(ow) * h, 0.0);
  for (int y = 0; y < h; ++y) {
    double* t = tmp.data() + static_cast<std::size_t>(y) * ow;
    const double* row = p + static_cast<std::size_t>(y) * w;
    for (int k = 0; k < 11; ++k) {
      const double gk = g[k];
      for (int x = 0; x < ow; ++x) t[x] += gk * row[x + k];
    }
  }
  out.assign(static_cast<std::size_t>(ow) * oh, 0.0);
  for (int y = 0; y < oh; ++y) {
    double* o = out.data() + static_cast<std::size_t>(y) * ow;
    for (int k = 0; k < 11; ++k) {
      const double gk = g[k];
      const double* t = tmp.data() + static_cast<std::size_t>(y + k) * ow;
      for (int x = 0; x < ow; ++x) o[x] += gk * t[x];
    }
  }
}

std::vector<double> samples_of(const Frame& f) {
  std::vector<double> v(f.sample_count());
  if (f.is_8bit()) {
    auto b = f.bytes();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = b[i];
  } else {
    auto r = f.reals();
    v.assign(r.begin(), r.end());
  }
  return v;
}

// Planes of the requested channel space, each on a [0, 255] scale.
std::vector<std::vector<double>> planes(const Frame& f, ChannelSet cs) {
  require(f.colorspace() == ColorSpace::kSrgb8, "evaluate_sequence: frames must be SRGB8");
  const std::size_t n = f.resolution().area();
  auto b = f.bytes();
  if (cs == ChannelSet::kRgb) {
    std::vector<std::vector<double>> p(3, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (int c = 0; c < 3; ++c) p[c][i] = b[3 * i + c];
    return p;
  }
  std::vector<std::vector<double>> p(cs == ChannelSet::kY ? 1 : 2, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Lab lab = srgb_to_lab(b[3 * i], b[3 * i + 1], b[3 * i + 2]);
    if (cs == ChannelSet::kY) {
      p[0][i] = lab.l * 2.55;
    } else {
      p[0][i] = lab.a + 128.0;
      p[1][i] = lab.b + 128.0;
    }
  }
  return p;
}

}  // namespace

double psnr_samples(std::span<const double> a, std::span<const double> b, double max_value) {
  require(a.size() == b.size() && !a.empty(), "psnr: shape mismatch");
  Accumulator acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc.add(d * d);
  }
  const double mse = acc.mean();
  if (mse == 0.0) return kInfinitePsnr;
  return 10.0 * std::log10(max_value * max_value / mse);
}

double psnr(const Frame& a, const Frame& b, double max_value) {
  require(a.resolution() == b.resolution() && a.channels() == b.channels(),
          "psnr: frames differ in shape");
  return psnr_samples(samples_of(a), samples_of(b), max_value);
}

double ssim_plane(std::span<const double> a, std::span<const double> b, int width, int height) {
  require(a.size() == b.size() && a.size() == static_cast<std::size_t>(width) * height,
          "ssim: shape mismatch");
  require(width >= 11 && height >= 11, "ssim: frame smaller than the 11x11 window");
  static const std::vector<double> g = gaussian_window();
  constexpr double c1 = (0.01 * 255) * (0.01 * 255);
  constexpr double c2 = (0.03 * 255) * (0.03 * 255);

  thread_local std::vector<double> xx, yy, xy, tmp, mx, my, sxx, syy, sxy;
  const std::size_t n = a.size();
  xx.resize(n);
  yy.resize(n);
  xy.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    xx[i] = a[i] * a[i];
    yy[i] = b[i] * b[i];
    xy[i] = a[i] * b[i];
  }
  filter_valid(a.data(), width, height, g, tmp, mx);
  filter_valid(b.data(), width, height, g, tmp, my);
  filter_valid(xx.data(), width, height, g, tmp, sxx);
  filter_valid(yy.data(), width, height, g, tmp, syy);
  filter_valid(xy.data(), width, height, g, tmp, sxy);

  Accumulator acc;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double vx = sxx[i] - mx[i] * mx[i];
    const double vy = syy[i] - my[i] * my[i];
    const double cov = sxy[i] - mx[i] * my[i];
    acc.add(((2 * mx[i] * my[i] + c1) * (2 * cov + c2)) /
            ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2)));
  }
  return acc.mean();
}

double ssim(const Frame& a, const Frame& b) {
  require(a.channels() == 1 && b.channels() == 1, "ssim: inputs must be single channel");
  require(a.resolution() == b.resolution(), "ssim: frames differ in shape");
  if (a.same_pixels(b)) return 1.0;
  return ssim_plane(samples_of(a), samples_of(b), a.width(), a.height());
}

const char* to_string(ChannelSet c) {
  switch (c) {
    case ChannelSet::kY: return "Y";
    case ChannelSet::kAb: return "AB";
    case ChannelSet::kRgb: return "RGB";
  }
  return "?";
}

ChannelSet parse_channel_set(const std::string& s) {
  if (s == "Y" || s == "y") return ChannelSet::kY;
  if (s == "AB" || s == "ab") return ChannelSet::kAb;
  if (s == "RGB" || s == "rgb") return ChannelSet::kRgb;
  fail(ErrorKind::kConfig, "unknown channel set '" + s + "' (expected Y|AB|RGB)");
}

SequenceReport evaluate_sequence(std::span<const Frame> pred, std::span<const Frame> gt,
                                 int key_interval, ChannelSet channels) {
  require(pred.size() == gt.size(),
          "evaluate_sequence: " + std::to_string(pred.size()) + " predicted frames vs " +
              std::to_string(gt.size()) + " ground-truth frames");
  require(key_interval >= 1, "evaluate_sequence: key interval must be >= 1");
  SequenceReport r;
  r.channels = channels;
  r.key_interval = key_interval;
  Accumulator mp, ms;
  for (std::size_t t = 0; t < pred.size(); ++t) {
    if (t % key_interval == 0) {
      ++r.excluded_key_frames;
      continue;
    }
    require(pred[t].resolution() == gt[t].resolution(),
            "evaluate_sequence: frame " + std::to_string(t) + " differs in resolution");
    const auto pp = planes(pred[t], channels);
    const auto gp = planes(gt[t], channels);
    std::vector<double> pa, ga;
    Accumulator ssim_acc;
    for (std::size_t c = 0; c < pp.size(); ++c) {
      pa.insert(pa.end(), pp[c].begin(), pp[c].end());
      ga.insert(ga.end(), gp[c].begin(), gp[c].end());
      ssim_acc.add(pp[c] == gp[c] ? 1.0
                                  : ssim_plane(pp[c], gp[c], pred[t].width(), pred[t].height()));
    }
    FrameScore s{t, psnr_samples(pa, ga, 255.0), ssim_acc.mean()};
    if (std::isinf(s.psnr)) {
      ++r.infinite_psnr_frames;
    } else {
      mp.add(s.psnr);
    }
    ms.add(s.ssim);
    r.frames.push_back(s);
  }
  r.mean_psnr = mp.mean();
  r.mean_ssim = ms.mean();
  r.perfect = !r.frames.empty() && r.infinite_psnr_frames == r.frames.size();
  return r;
}

std::string report_to_json(const SequenceReport& r, int indent) {
  nlohmann::ordered_json j;
  j["channels"] = to_string(r.channels);
  j["y_definition"] = kYDefinition;
  j["key_interval"] = r.key_interval;
  j["excluded_key_frames"] = r.excluded_key_frames;
  j["evaluated_frames"] = r.frames.size();
  j["infinite_psnr_frames"] = r.infinite_psnr_frames;
  j["perfect"] = r.perfect;
  j["mean_psnr_db"] = std::isnan(r.mean_psnr) ? nlohmann::ordered_json() : nlohmann::ordered_json(r.mean_psnr);
  j["mean_ssim"] = std::isnan(r.mean_ssim) ? nlohmann::ordered_json() : nlohmann::ordered_json(r.mean_ssim);
  auto& idx = j["frame_index"] = nlohmann::ordered_json::array();
  auto& ps = j["psnr_db"] = nlohmann::ordered_json::array();
  auto& ss = j["ssim"] = nlohmann::ordered_json::array();
  for (const auto& f : r.frames) {
    idx.push_back(f.index);
    // JSON has no infinity; identical frames are written as null.
    ps.push_back(std::isinf(f.psnr) ? nlohmann::ordered_json() : nlohmann::ordered_json(f.psnr));
    ss.push_back(f.ssim);
  }
  return j.dump(indent);
}

std::string report_to_csv(const SequenceReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "# channels=" << to_string(r.channels) << "; " << kYDefinition << "\n";
  out << "frame_index,psnr_db,ssim\n";
  for (const auto& f : r.frames) out << f.index << ',' << f.psnr << ',' << f.ssim << '\n';
  return out.str();
}

}  // namespace dualcam
