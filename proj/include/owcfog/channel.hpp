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

// Indoor optical wireless channel simulation.
//
// Access points are Lambertian emitters on the ceiling; the room surfaces are
// cut into square-ish elements which re-emit the light they receive as
// first-order Lambertian sources scaled by the surface reflectivity. The
// impulse response of each (access point, receiver location, wavelength) link
// is accumulated as a time histogram up to second-order reflections; the
// delay spread, the 3-dB bandwidth and the supported OOK rate are derived
// from it.
//
// Surface discretization: a face with extents (Lu, Lv) and requested edge e
// is split into ceil(Lu/e) x ceil(Lv/e) equal cells; each element is the
// point at the cell centre carrying the cell area.

#ifndef OWCFOG_CHANNEL_HPP_
#define OWCFOG_CHANNEL_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "owcfog/common.hpp"

namespace owcfog::channel {

inline constexpr double kSinrFloorDb = 14.0;
inline constexpr double kFecFreeSinrDb = 15.6;
inline constexpr double kFecRateFactor = 0.9;

enum class Surface : int {
  kWallX0 = 0,  // x = 0
  kWallXL = 1,  // x = length
  kWallY0 = 2,  // y = 0
  kWallYW = 3,  // y = width
  kCeiling = 4,
  kFloor = 5,
};
inline constexpr int kNumSurfaces = 6;

struct SurfaceReflectivity {
  PerWavelength<double> walls{0.8, 0.8, 0.8, 0.8};
  PerWavelength<double> ceiling{0.8, 0.8, 0.8, 0.8};
  PerWavelength<double> floor{0.3, 0.3, 0.3, 0.3};

  double For(Surface s, Wavelength w) const;
};

struct AccessPoint {
  int id = 0;
  Vec3 position;
  Vec3 normal{0.0, 0.0, -1.0};
  double half_power_semi_angle_deg = 60.0;
  PerWavelength<double> tx_power_w{1.0, 1.0, 1.0, 1.0};
};

struct ReceiverSpec {
  double fov_deg = 40.0;  // half-angle
  double area_m2 = 20e-6;
  PerWavelength<double> responsivity{0.4, 0.4, 0.4, 0.4};
  double bandwidth_hz = 5e9;
  double preamp_density = 4.47e-12 * 4.47e-12;  // A^2/Hz
  Vec3 normal{0.0, 0.0, 1.0};
  // OOK bit/s delivered per Hz of usable bandwidth.
  double rate_factor = 1.0;

  void Validate() const;
};

struct RoomConfig {
  double length = 8.0;
  double width = 4.0;
  double height = 3.0;
  SurfaceReflectivity reflectivity;
  // Element edge for first-order bounces.
  double element_edge = 0.1;
  // Element edge for both bounces of second-order paths.
  double second_order_element_edge = 0.2;
  size_t max_elements = 200000;
  double time_bin_s = 1e-11;
  int zero_padding = 4;
  // 0 selects the Nyquist frequency of the time bins.
  double bandwidth_cap_hz = 0.0;
  double receiver_plane_height = 1.0;
  std::vector<AccessPoint> access_points;
  // Candidate user locations (x, y) on the receiver plane.
  std::vector<std::pair<double, double>> user_grid;

  double BandwidthCap() const;
  void Validate() const;
};

// Reference room: 8 x 4 x 3 m, eight ceiling access points in a 2 x 4 grid,
// 16 x 8 user grid on the 1 m receiver plane.
RoomConfig ReferenceRoom();
ReceiverSpec ReferenceReceiver();
std::vector<std::pair<double, double>> UniformGrid(double length, double width,
                                                   int nx, int ny);

struct SurfaceElement {
  Vec3 center;
  Vec3 normal;  // points into the room
  double area = 0.0;
  Surface surface = Surface::kFloor;
};

// Throws kResource when the element count would exceed `max_elements`.
std::vector<SurfaceElement> DiscretizeRoom(const RoomConfig& room, double edge,
                                           size_t max_elements);

struct ImpulseResponse {
  double bin_width_s = 0.0;
  // Arrival time of bin 0.
  double start_time_s = 0.0;
  std::vector<double> bin_power_w;
  int ap_id = 0;
  Wavelength wavelength = Wavelength::kRed;
  Vec3 rx_position;

  double TotalPower() const;
  double BinTime(size_t i) const {
    return start_time_s + static_cast<double>(i) * bin_width_s;
  }
};

struct ChannelRecord {
  double user_x = 0.0;
  double user_y = 0.0;
  int ap_id = 0;
  Wavelength wavelength = Wavelength::kRed;
  double dc_gain = 0.0;
  double rx_power_w = 0.0;
  double delay_spread_s = 0.0;
  double bandwidth_3db_hz = 0.0;
  // Supported OOK rate before any FEC adjustment.
  double rate_bps = 0.0;
};

// m = -ln 2 / ln(cos(semi-angle)). Throws kDomain outside (0, 90).
double LambertianOrder(double half_power_semi_angle_deg);

double LosGain(const AccessPoint& ap, const ReceiverSpec& rx,
               const Vec3& rx_position);

// max_order in {0, 1, 2}.
ImpulseResponse TraceImpulseResponse(const RoomConfig& room,
                                     const AccessPoint& ap,
                                     const ReceiverSpec& rx,
                                     const Vec3& rx_position,
                                     Wavelength wavelength, int max_order);

// RMS delay spread. Throws kDomain on an empty response.
double DelaySpread(const ImpulseResponse& ir);

// Lowest frequency where |H(f)|/|H(0)| reaches 1/sqrt(2); `cap_hz` when the
// response never drops that far below Nyquist.
double Bandwidth3dB(const ImpulseResponse& ir, int zero_padding, double cap_hz);

// rate_factor * min(bandwidth, receiver bandwidth).
double BaseDataRate(double bandwidth_3db_hz, const ReceiverSpec& rx);

// Base rate with the 10% FEC overhead applied for 14 <= SINR < 15.6 dB.
// Throws InfeasibleError below 14 dB.
double SupportedDataRate(const ChannelRecord& record, const ReceiverSpec& rx,
                         double sinr_db);

ChannelRecord MakeRecord(const ImpulseResponse& ir, double tx_power_w,
                         const ReceiverSpec& rx, int zero_padding,
                         double cap_hz);

// Records for every (location, access point, wavelength), ordered by
// location, then access point, then wavelength. Locations with zero received
// power from an access point get zero delay spread and zero bandwidth.
std::vector<ChannelRecord> CharacterizeLocations(
    const RoomConfig& room, const ReceiverSpec& rx,
    const std::vector<std::pair<double, double>>& locations, int max_order);

// Second-order component only, per access point, for convergence studies.
std::vector<double> SecondOrderPower(const RoomConfig& room,
                                     const ReceiverSpec& rx,
                                     const Vec3& rx_position,
                                     Wavelength wavelength);

}  // namespace owcfog::channel

#endif  // OWCFOG_CHANNEL_HPP_
