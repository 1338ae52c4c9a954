#pragma once

// Projection weights gamma_u for nonempty coordinate subsets u.
//
// Coordinates are 0-based in the API; the text grammar used on the command
// line is 1-based and lives in io.hpp.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmcforge/error.hpp"

namespace qmcforge {

using Subset = std::vector<int>;  // sorted, 0-based

// Multiplier applied to gamma_u as a function of |u|. A geometric factor
// c^|u| is recorded as such so product weights can absorb it per coordinate.
struct PerOrderFactor {
  std::function<double(int)> fn;
  std::optional<double> perCoordinate;

  static PerOrderFactor geometric(double c) {
    return {[c](int order) { return std::pow(c, order); }, c};
  }
  static PerOrderFactor general(std::function<double(int)> f) { return {std::move(f), std::nullopt}; }

  double operator()(int order) const { return fn(order); }
};

class WeightSpec {
 public:
  enum class Kind { Product, OrderDependent, Pod, Explicit };

  // gamma_j for coordinates 0..size-1; coordinates beyond the list take
  // `defaultGamma`, or are an error when it is absent.
  static WeightSpec product(std::vector<double> gammas, std::optional<double> defaultGamma = std::nullopt) {
    WeightSpec w(Kind::Product);
    w.coordinate_ = std::move(gammas);
    w.coordinateDefault_ = defaultGamma;
    w.check();
    return w;
  }

  // orderGammas[l-1] is Gamma_l; orders beyond the list take `defaultGamma`.
  static WeightSpec orderDependent(std::vector<double> orderGammas, double defaultGamma = 0.0) {
    WeightSpec w(Kind::OrderDependent);
    w.order_ = std::move(orderGammas);
    w.orderDefault_ = defaultGamma;
    w.check();
    return w;
  }

  static WeightSpec pod(std::vector<double> orderGammas, std::vector<double> gammas, double orderDefault = 0.0,
                        std::optional<double> coordinateDefault = std::nullopt) {
    WeightSpec w(Kind::Pod);
    w.order_ = std::move(orderGammas);
    w.orderDefault_ = orderDefault;
    w.coordinate_ = std::move(gammas);
    w.coordinateDefault_ = coordinateDefault;
    w.check();
    return w;
  }

  // Subsets absent from the map have weight 0.
  static WeightSpec explicitMap(std::map<Subset, double> weights) {
    WeightSpec w(Kind::Explicit);
    for (auto& [u, g] : weights) {
      if (u.empty()) throw Error("explicit weight given for the empty subset");
      Subset sorted = u;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() < 0) {
        throw Error("invalid coordinate subset in explicit weights");
      }
      w.explicit_[sorted] = g;
    }
    w.check();
    return w;
  }

  Kind kind() const { return kind_; }

  double weightOf(std::span<const int> u) const {
    if (u.empty()) throw Error("weight of the empty subset is undefined");
    const int order = static_cast<int>(u.size());
    double g = 0.0;
    switch (kind_) {
      case Kind::Product:
        g = 1.0;
        for (int j : u) g *= coordinateWeight(j);
        break;
      case Kind::OrderDependent:
        g = orderWeight(order);
        break;
      case Kind::Pod:
        g = orderWeight(order);
        for (int j : u) g *= coordinateWeight(j);
        break;
      case Kind::Explicit: {
        Subset key(u.begin(), u.end());
        std::sort(key.begin(), key.end());
        const auto it = explicit_.find(key);
        g = it == explicit_.end() ? 0.0 : it->second;
        break;
      }
    }
    if (kind_ != Kind::OrderDependent && kind_ != Kind::Pod && scale_) g *= scale_(order);
    return g;
  }

  // gamma_j of product / POD weights.
  double coordinateWeight(int j) const {
    if (j < 0) throw Error("negative coordinate index");
    if (static_cast<std::size_t>(j) < coordinate_.size()) return coordinate_[static_cast<std::size_t>(j)];
    if (coordinateDefault_) return *coordinateDefault_;
    throw Error("coordinate " + std::to_string(j + 1) + " is beyond the " + std::to_string(coordinate_.size()) +
                " declared product weights");
  }

  // Gamma_l of order-dependent / POD weights (including any order factors).
  double orderWeight(int order) const {
    if (order < 1) throw Error("order must be >= 1");
    double g = static_cast<std::size_t>(order) <= order_.size() ? order_[static_cast<std::size_t>(order - 1)] : orderDefault_;
    if (scale_) g *= scale_(order);
    return g;
  }

  // Largest order with a possibly nonzero weight, bounded by `dimension`.
  int maxOrder(int dimension) const {
    if (kind_ == Kind::Product) return dimension;
    if (kind_ == Kind::Explicit) {
      std::size_t m = 0;
      for (auto& [u, g] : explicit_) {
        if (g != 0.0) m = std::max(m, u.size());
      }
      return std::min<int>(dimension, static_cast<int>(m));
    }
    if (orderDefault_ != 0.0) return dimension;
    int m = 0;
    for (std::size_t l = 0; l < order_.size(); ++l) {
      if (order_[l] != 0.0) m = static_cast<int>(l) + 1;
    }
    return std::min(dimension, m);
  }

  const std::map<Subset, double>& explicitWeights() const { return explicit_; }
  bool hasOrderScale() const { return static_cast<bool>(scale_); }

  // Returns a spec whose weightOf(u) equals factor(|u|) * weightOf(u).
  WeightSpec transformed(const PerOrderFactor& factor) const {
    WeightSpec out = *this;
    if ((kind_ == Kind::Product || kind_ == Kind::Pod) && factor.perCoordinate && !scale_) {
      const double c = *factor.perCoordinate;
      for (auto& g : out.coordinate_) g *= c;
      if (out.coordinateDefault_) *out.coordinateDefault_ *= c;
      return out;
    }
    if (kind_ == Kind::Explicit) {
      for (auto& [u, g] : out.explicit_) g *= factor(static_cast<int>(u.size()));
      return out;
    }
    if (kind_ == Kind::Product) {
      // A non-geometric factor turns product weights into POD weights.
      out.kind_ = Kind::Pod;
      out.order_.clear();
      out.orderDefault_ = 1.0;
    }
    auto prev = scale_;
    auto fn = factor.fn;
    out.scale_ = prev ? std::function<double(int)>([prev, fn](int o) { return prev(o) * fn(o); }) : fn;
    return out;
  }

  // Each weight raised to the power q (gamma_u^q), preserving the kind.
  WeightSpec powered(double q) const {
    if (q == 1.0) return *this;
    WeightSpec out = *this;
    for (auto& g : out.coordinate_) g = std::pow(g, q);
    if (out.coordinateDefault_) *out.coordinateDefault_ = std::pow(*out.coordinateDefault_, q);
    for (auto& g : out.order_) g = std::pow(g, q);
    out.orderDefault_ = std::pow(out.orderDefault_, q);
    for (auto& [u, g] : out.explicit_) g = std::pow(g, q);
    if (scale_) {
      auto prev = scale_;
      out.scale_ = [prev, q](int o) { return std::pow(prev(o), q); };
    }
    return out;
  }

 private:
  explicit WeightSpec(Kind k) : kind_(k) {}

  void check() const {
    auto bad = [](double g) { return !std::isfinite(g) || g < 0.0; };
    for (double g : coordinate_) {
      if (bad(g)) throw Error("weights must be finite and >= 0");
    }
    for (double g : order_) {
      if (bad(g)) throw Error("weights must be finite and >= 0");
    }
    if (bad(orderDefault_) || (coordinateDefault_ && bad(*coordinateDefault_))) throw Error("weights must be finite and >= 0");
    for (auto& [u, g] : explicit_) {
      if (bad(g)) throw Error("weights must be finite and >= 0");
    }
  }

  Kind kind_;
  std::vector<double> coordinate_;
  std::optional<double> coordinateDefault_;
  std::vector<double> order_;
  double orderDefault_ = 0.0;
  std::map<Subset, double> explicit_;
  std::function<double(int)> scale_;
};

inline WeightSpec transformWeights(const WeightSpec& w, const PerOrderFactor& factor) { return w.transformed(factor); }

inline double weightOf(const WeightSpec& w, std::span<const int> u) { return w.weightOf(u); }

}  // namespace qmcforge
