// Copyright 2026 The owcfog Authors
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

#ifndef OWCFOG_COMMON_HPP_
#define OWCFOG_COMMON_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace owcfog {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0;     // m/s
inline constexpr double kElectronCharge = 1.602176634e-19;  // C

// Error categories surfaced through the C API as status codes.
enum class ErrorKind {
  kInvalidArgument,
  kDomain,
  kDegenerateGeometry,
  kResource,
  kInfeasible,
  kConfig,
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Infeasibility carries the binding constraint label so callers can emit a
// machine-readable report.
class InfeasibleError : public Error {
 public:
  InfeasibleError(std::string constraint, const std::string& message)
      : Error(ErrorKind::kInfeasible, message),
        constraint_(std::move(constraint)) {}
  const std::string& constraint() const { return constraint_; }

 private:
  std::string constraint_;
};

// The four laser-diode colours whose sum forms white illumination.
enum class Wavelength : int { kRed = 0, kYellow = 1, kGreen = 2, kBlue = 3 };
inline constexpr int kNumWavelengths = 4;
inline constexpr std::array<Wavelength, kNumWavelengths> kAllWavelengths = {
    Wavelength::kRed, Wavelength::kYellow, Wavelength::kGreen,
    Wavelength::kBlue};

std::string_view WavelengthName(Wavelength w);
// Accepts "red"/"R"/"Red" etc.
std::optional<Wavelength> ParseWavelength(std::string_view name);
inline int Index(Wavelength w) { return static_cast<int>(w); }

// A per-wavelength quantity (power, reflectivity, responsivity...).
template <typename T>
using PerWavelength = std::array<T, kNumWavelengths>;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double Dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double Norm() const { return std::sqrt(Dot(*this)); }
};

inline double DegToRad(double deg) { return deg * kPi / 180.0; }

// Dense [users][aps][wavelengths] table of doubles.
class LinkTable {
 public:
  LinkTable() = default;
  LinkTable(int users, int aps, double fill = 0.0)
      : users_(users),
        aps_(aps),
        data_(static_cast<size_t>(users) * aps * kNumWavelengths, fill) {}

  int users() const { return users_; }
  int aps() const { return aps_; }

  double& at(int u, int a, int l) { return data_[Offset(u, a, l)]; }
  double at(int u, int a, int l) const { return data_[Offset(u, a, l)]; }

 private:
  size_t Offset(int u, int a, int l) const {
    return (static_cast<size_t>(u) * aps_ + a) * kNumWavelengths + l;
  }
  int users_ = 0;
  int aps_ = 0;
  std::vector<double> data_;
};

}  // namespace owcfog

#endif  // OWCFOG_COMMON_HPP_
