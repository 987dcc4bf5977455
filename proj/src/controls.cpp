#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "weinorman/propagation.hpp"

namespace wn {

ControlSignal ControlSignal::samples(std::vector<double> times, std::vector<RealVector> values) {
  if (times.empty()) throw ValidationError("control samples: no samples");
  if (times.size() != values.size()) throw ValidationError("control samples: size mismatch");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) {
      throw ValidationError("control samples: times must be strictly increasing (sample " +
                            std::to_string(k + 1) + ")");
    }
  }
  const auto n = values.front().size();
  for (const auto& v : values) {
    if (v.size() != n) throw ValidationError("control samples: inconsistent channel count");
    if (!v.allFinite()) throw ValidationError("control samples: non-finite value");
  }
  return ControlSignal(static_cast<int>(n), Samples{std::move(times), std::move(values)});
}

ControlSignal ControlSignal::harmonic(RealVector offsets,
                                      std::vector<std::vector<HarmonicTerm>> terms) {
  if (terms.empty()) terms.resize(offsets.size());
  if (static_cast<Eigen::Index>(terms.size()) != offsets.size()) {
    throw ValidationError("harmonic controls: channel count mismatch");
  }
  const int n = static_cast<int>(offsets.size());
  return ControlSignal(n, Harmonic{std::move(offsets), std::move(terms)});
}

ControlSignal ControlSignal::constant(RealVector u) { return harmonic(std::move(u), {}); }

ControlSignal ControlSignal::random_harmonic(int channels, int harmonics, double amplitude,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<HarmonicTerm>> terms(channels);
  for (auto& channel : terms) {
    std::vector<double> weights(harmonics);
    for (auto& w : weights) w = 0.5 + 0.5 * unit(rng);
    double total = 0.0;
    for (double w : weights) total += w;
    for (int h = 0; h < harmonics; ++h) {
      HarmonicTerm term;
      term.amplitude = amplitude * weights[h] / total;
      term.frequency = 0.5 + 2.5 * unit(rng);
      term.phase = 2.0 * std::numbers::pi * unit(rng);
      channel.push_back(term);
    }
  }
  return harmonic(RealVector::Zero(channels), std::move(terms));
}

ControlSignal::Kind ControlSignal::kind() const {
  return std::holds_alternative<Samples>(data_) ? Kind::piecewise_constant_samples
                                                : Kind::analytic_preset;
}

RealVector ControlSignal::operator()(double t) const {
  if (const auto* s = as_samples()) {
    auto it = std::upper_bound(s->times.begin(), s->times.end(), t);
    const auto idx = it == s->times.begin() ? 0 : std::distance(s->times.begin(), it) - 1;
    return s->values[idx];
  }
  const auto& h = std::get<Harmonic>(data_);
  RealVector u = h.offsets;
  for (int c = 0; c < channels_; ++c) {
    for (const auto& term : h.terms[c]) u(c) += term.amplitude * std::sin(term.frequency * t + term.phase);
  }
  return u;
}

}  // namespace wn
