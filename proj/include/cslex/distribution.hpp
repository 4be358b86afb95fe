// Copyright (c) 2026 The cslex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "cslex/errors.hpp"
#include "cslex/rng.hpp"

namespace cslex {

/// Per-word driving-volume law. Spec strings:
///   "fixed:K"            every word gets K segments
///   "uniform:LO:HI"      uniform integer in [LO, HI]
///   "zipf:S:MIN:MAX"     P(v) proportional to v^-S on [MIN, MAX]
/// All volumes are >= 1.
class VolumeLaw {
 public:
  static VolumeLaw parse(const std::string& spec) {
    std::vector<std::string> parts;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ':')) parts.push_back(item);
    if (parts.empty()) throw InvalidDistribution("empty spec");
    try {
      if (parts[0] == "fixed" && parts.size() == 2) {
        return fixed(std::stoi(parts[1]));
      }
      if (parts[0] == "uniform" && parts.size() == 3) {
        return uniform(std::stoi(parts[1]), std::stoi(parts[2]));
      }
      if (parts[0] == "zipf" && parts.size() == 4) {
        return zipf(std::stod(parts[1]), std::stoi(parts[2]),
                    std::stoi(parts[3]));
      }
    } catch (const InvalidDistribution&) {
      throw;
    } catch (const std::exception&) {
      throw InvalidDistribution("unparsable numbers in '" + spec + "'");
    }
    throw InvalidDistribution("unrecognized spec '" + spec + "'");
  }

  static VolumeLaw fixed(int k) {
    if (k < 1) throw InvalidDistribution("fixed volume must be >= 1");
    VolumeLaw law;
    law.spec_ = "fixed:" + std::to_string(k);
    law.min_ = k;
    law.weights_ = {1.0};
    return law;
  }

  static VolumeLaw uniform(int lo, int hi) {
    if (lo < 1 || hi < lo) {
      throw InvalidDistribution("uniform bounds must satisfy 1 <= lo <= hi");
    }
    VolumeLaw law;
    law.spec_ = "uniform:" + std::to_string(lo) + ":" + std::to_string(hi);
    law.min_ = lo;
    law.weights_.assign(static_cast<std::size_t>(hi - lo + 1), 1.0);
    return law;
  }

  static VolumeLaw zipf(double s, int lo, int hi) {
    if (lo < 1 || hi < lo) {
      throw InvalidDistribution("zipf bounds must satisfy 1 <= lo <= hi");
    }
    if (!(s > 0)) throw InvalidDistribution("zipf exponent must be > 0");
    VolumeLaw law;
    std::ostringstream os;
    os << "zipf:" << s << ":" << lo << ":" << hi;
    law.spec_ = os.str();
    law.min_ = lo;
    for (int v = lo; v <= hi; ++v) {
      law.weights_.push_back(std::pow(static_cast<double>(v), -s));
    }
    return law;
  }

  int sample(Rng& rng) const {
    return min_ + static_cast<int>(rng.weighted(weights_));
  }

  int min_volume() const { return min_; }
  int max_volume() const { return min_ + static_cast<int>(weights_.size()) - 1; }

  /// P(volume == v); zero outside the support. Used by statistical tests.
  double pmf(int v) const {
    if (v < min_ || v > max_volume()) return 0.0;
    double total = 0;
    for (double w : weights_) total += w;
    return weights_[static_cast<std::size_t>(v - min_)] / total;
  }

  const std::string& spec() const { return spec_; }

 private:
  std::string spec_;
  int min_ = 1;
  std::vector<double> weights_;
};

}  // namespace cslex
