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

#include "owcfog/channel.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <string>

namespace owcfog::channel {
namespace {

// Gain of a Lambertian emitter of order `order` at `p` (normal `np`) onto a
// patch of area `area` at `q` (normal `nq`). Zero when either side faces away
// or the incidence angle is below `min_cos_incidence`.
inline double Transfer(const Vec3& p, const Vec3& np, double order,
                       const Vec3& q, const Vec3& nq, double area,
                       double min_cos_incidence, double* distance) {
  const Vec3 d = q - p;
  const double dist2 = d.Dot(d);
  const double dist = std::sqrt(dist2);
  *distance = dist;
  if (dist <= 0.0) return 0.0;
  const double cos_emit = np.Dot(d) / dist;
  const double cos_inc = -nq.Dot(d) / dist;
  if (cos_emit <= 0.0 || cos_inc <= 0.0 || cos_inc < min_cos_incidence) {
    return 0.0;
  }
  const double emit = order == 1.0 ? cos_emit : std::pow(cos_emit, order);
  return (order + 1.0) * area / (2.0 * kPi * dist2) * emit * cos_inc;
}

class Histogram {
 public:
  Histogram(double bin_width, size_t bins)
      : bin_width_(bin_width), bins_(bins, 0.0) {}

  void Add(double time_s, double weight) {
    const auto idx = static_cast<size_t>(time_s / bin_width_);
    if (idx >= bins_.size()) bins_.resize(idx + 1, 0.0);
    bins_[idx] += weight;
  }

  void Clear() { std::fill(bins_.begin(), bins_.end(), 0.0); }

  ImpulseResponse ToResponse(double scale) const {
    ImpulseResponse ir;
    ir.bin_width_s = bin_width_;
    size_t first = 0;
    while (first < bins_.size() && bins_[first] <= 0.0) ++first;
    if (first == bins_.size()) return ir;
    size_t last = bins_.size() - 1;
    while (bins_[last] <= 0.0) --last;
    ir.start_time_s = static_cast<double>(first) * bin_width_;
    ir.bin_power_w.reserve(last - first + 1);
    for (size_t i = first; i <= last; ++i) {
      ir.bin_power_w.push_back(bins_[i] * scale);
    }
    return ir;
  }

 private:
  double bin_width_;
  std::vector<double> bins_;
};

// Light landing on each second-order element from one access point, before
// reflectivity.
struct Illumination {
  std::vector<double> gain;
  std::vector<double> delay;
};

struct RoomGeometry {
  std::vector<SurfaceElement> first;
  std::vector<SurfaceElement> second;
};

RoomGeometry BuildGeometry(const RoomConfig& room, int max_order) {
  RoomGeometry g;
  if (max_order >= 1) {
    g.first = DiscretizeRoom(room, room.element_edge, room.max_elements);
  }
  if (max_order >= 2) {
    g.second = DiscretizeRoom(room, room.second_order_element_edge,
                              room.max_elements);
  }
  return g;
}

Illumination Illuminate(const AccessPoint& ap,
                        const std::vector<SurfaceElement>& elements) {
  const double m = LambertianOrder(ap.half_power_semi_angle_deg);
  Illumination out;
  out.gain.resize(elements.size());
  out.delay.resize(elements.size());
  for (size_t i = 0; i < elements.size(); ++i) {
    double dist = 0.0;
    out.gain[i] = Transfer(ap.position, ap.normal, m, elements[i].center,
                           elements[i].normal, elements[i].area, 0.0, &dist);
    out.delay[i] = dist / kSpeedOfLight;
  }
  return out;
}

using SurfaceRho = std::array<double, kNumSurfaces>;

SurfaceRho RhoFor(const SurfaceReflectivity& r, Wavelength w) {
  SurfaceRho rho{};
  for (int s = 0; s < kNumSurfaces; ++s) {
    rho[s] = r.For(static_cast<Surface>(s), w);
  }
  return rho;
}

size_t HistogramBins(const RoomConfig& room) {
  const double diag = std::sqrt(room.length * room.length +
                                room.width * room.width +
                                room.height * room.height);
  return static_cast<size_t>(3.0 * diag / kSpeedOfLight / room.time_bin_s) + 2;
}

// Unit-power responses of every access point at one receiver location.
void Accumulate(const RoomGeometry& geom, const std::vector<AccessPoint>& aps,
                const std::vector<Illumination>& illum, const ReceiverSpec& rx,
                const Vec3& rx_pos, const SurfaceRho& rho, int max_order,
                std::vector<Histogram>& out, bool include_lower = true) {
  const double min_cos_fov = std::cos(DegToRad(rx.fov_deg));
  const size_t n_aps = aps.size();

  for (size_t a = 0; a < n_aps && include_lower; ++a) {
    const double m = LambertianOrder(aps[a].half_power_semi_angle_deg);
    double dist = 0.0;
    const double g = Transfer(aps[a].position, aps[a].normal, m, rx_pos,
                              rx.normal, rx.area_m2, min_cos_fov, &dist);
    if (g > 0.0) out[a].Add(dist / kSpeedOfLight, g);
  }
  if (max_order < 1) return;

  std::vector<double> orders(n_aps);
  for (size_t a = 0; a < n_aps; ++a) {
    orders[a] = LambertianOrder(aps[a].half_power_semi_angle_deg);
  }
  for (const SurfaceElement& e : geom.first) {
    if (!include_lower) break;
    const double r = rho[static_cast<int>(e.surface)];
    if (r <= 0.0) continue;
    double d_out = 0.0;
    const double g_out = Transfer(e.center, e.normal, 1.0, rx_pos, rx.normal,
                                  rx.area_m2, min_cos_fov, &d_out);
    if (g_out <= 0.0) continue;
    for (size_t a = 0; a < n_aps; ++a) {
      double d_in = 0.0;
      const double g_in = Transfer(aps[a].position, aps[a].normal, orders[a],
                                   e.center, e.normal, e.area, 0.0, &d_in);
      if (g_in <= 0.0) continue;
      out[a].Add((d_in + d_out) / kSpeedOfLight, g_in * r * g_out);
    }
  }
  if (max_order < 2) return;

  const auto& elems = geom.second;
  for (const SurfaceElement& e2 : elems) {
    const double r2 = rho[static_cast<int>(e2.surface)];
    if (r2 <= 0.0) continue;
    double d_out = 0.0;
    const double g_out = Transfer(e2.center, e2.normal, 1.0, rx_pos, rx.normal,
                                  rx.area_m2, min_cos_fov, &d_out);
    if (g_out <= 0.0) continue;
    const double tail = r2 * g_out;
    const double t_out = d_out / kSpeedOfLight;
    for (size_t i = 0; i < elems.size(); ++i) {
      const SurfaceElement& e1 = elems[i];
      if (e1.surface == e2.surface) continue;
      const double r1 = rho[static_cast<int>(e1.surface)];
      if (r1 <= 0.0) continue;
      double d_mid = 0.0;
      const double g_mid = Transfer(e1.center, e1.normal, 1.0, e2.center,
                                    e2.normal, e2.area, 0.0, &d_mid);
      if (g_mid <= 0.0) continue;
      const double path = r1 * g_mid * tail;
      const double t_tail = d_mid / kSpeedOfLight + t_out;
      for (size_t a = 0; a < n_aps; ++a) {
        const double g_in = illum[a].gain[i];
        if (g_in <= 0.0) continue;
        out[a].Add(illum[a].delay[i] + t_tail, g_in * path);
      }
    }
  }
}

std::vector<Illumination> IlluminateAll(const std::vector<AccessPoint>& aps,
                                        const RoomGeometry& geom) {
  std::vector<Illumination> illum;
  illum.reserve(aps.size());
  for (const AccessPoint& ap : aps) illum.push_back(Illuminate(ap, geom.second));
  return illum;
}

void CheckMaxOrder(int max_order) {
  if (max_order < 0 || max_order > 2) {
    throw Error(ErrorKind::kInvalidArgument,
                "max_order must be 0, 1 or 2, got " + std::to_string(max_order));
  }
}

void CheckInsideRoom(const RoomConfig& room, const Vec3& p,
                     const std::string& what) {
  const double eps = 1e-12;
  if (p.x < -eps || p.x > room.length + eps || p.y < -eps ||
      p.y > room.width + eps || p.z < -eps || p.z > room.height + eps) {
    throw Error(ErrorKind::kConfig, what + " lies outside the room");
  }
}

}  // namespace

double SurfaceReflectivity::For(Surface s, Wavelength w) const {
  switch (s) {
    case Surface::kCeiling:
      return ceiling[Index(w)];
    case Surface::kFloor:
      return floor[Index(w)];
    default:
      return walls[Index(w)];
  }
}

void ReceiverSpec::Validate() const {
  if (!(fov_deg > 0.0 && fov_deg <= 90.0)) {
    throw Error(ErrorKind::kConfig, "receiver fov must lie in (0, 90] degrees");
  }
  if (!(area_m2 > 0.0)) throw Error(ErrorKind::kConfig, "detector area must be > 0");
  for (double r : responsivity) {
    if (!(r > 0.0)) throw Error(ErrorKind::kConfig, "responsivity must be > 0");
  }
  if (!(bandwidth_hz > 0.0)) {
    throw Error(ErrorKind::kConfig, "receiver bandwidth must be > 0");
  }
  if (!(preamp_density >= 0.0)) {
    throw Error(ErrorKind::kConfig, "preamplifier noise density must be >= 0");
  }
  if (!(rate_factor > 0.0)) throw Error(ErrorKind::kConfig, "rate_factor must be > 0");
}

double RoomConfig::BandwidthCap() const {
  return bandwidth_cap_hz > 0.0 ? bandwidth_cap_hz : 0.5 / time_bin_s;
}

void RoomConfig::Validate() const {
  if (!(length > 0.0 && width > 0.0 && height > 0.0)) {
    throw Error(ErrorKind::kConfig, "room dimensions must be > 0");
  }
  for (const auto* arr : {&reflectivity.walls, &reflectivity.ceiling,
                          &reflectivity.floor}) {
    for (double r : *arr) {
      if (!(r >= 0.0 && r <= 1.0)) {
        throw Error(ErrorKind::kConfig, "reflectivity must lie in [0, 1]");
      }
    }
  }
  const double smallest = std::min({length, width, height});
  for (double e : {element_edge, second_order_element_edge}) {
    if (!(e > 0.0 && e <= smallest)) {
      throw Error(ErrorKind::kConfig,
                  "element edge must be > 0 and <= the smallest room dimension");
    }
  }
  if (!(time_bin_s > 0.0)) throw Error(ErrorKind::kConfig, "time bin must be > 0");
  if (zero_padding < 1) throw Error(ErrorKind::kConfig, "zero_padding must be >= 1");
  if (!(receiver_plane_height >= 0.0 && receiver_plane_height <= height)) {
    throw Error(ErrorKind::kConfig, "receiver plane outside the room");
  }
  for (const AccessPoint& ap : access_points) {
    CheckInsideRoom(*this, ap.position, "access point " + std::to_string(ap.id));
    if (!(ap.half_power_semi_angle_deg > 0.0 &&
          ap.half_power_semi_angle_deg < 90.0)) {
      throw Error(ErrorKind::kConfig, "half-power semi-angle must lie in (0, 90)");
    }
    for (double p : ap.tx_power_w) {
      if (!(p > 0.0)) throw Error(ErrorKind::kConfig, "transmit power must be > 0");
    }
  }
  for (const auto& [x, y] : user_grid) {
    CheckInsideRoom(*this, {x, y, receiver_plane_height}, "user location");
  }
}

std::vector<std::pair<double, double>> UniformGrid(double length, double width,
                                                   int nx, int ny) {
  std::vector<std::pair<double, double>> grid;
  grid.reserve(static_cast<size_t>(nx) * ny);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      grid.emplace_back((i + 0.5) * length / nx, (j + 0.5) * width / ny);
    }
  }
  return grid;
}

RoomConfig ReferenceRoom() {
  RoomConfig room;
  int id = 0;
  for (double y : {1.0, 3.0}) {
    for (double x : {1.0, 3.0, 5.0, 7.0}) {
      AccessPoint ap;
      ap.id = id++;
      ap.position = {x, y, room.height};
      ap.half_power_semi_angle_deg = 60.0;
      ap.tx_power_w = {7.2, 7.2, 7.2, 7.2};
      room.access_points.push_back(ap);
    }
  }
  room.user_grid = UniformGrid(room.length, room.width, 16, 8);
  return room;
}

ReceiverSpec ReferenceReceiver() { return ReceiverSpec{}; }

std::vector<SurfaceElement> DiscretizeRoom(const RoomConfig& room, double edge,
                                           size_t max_elements) {
  if (!(edge > 0.0)) throw Error(ErrorKind::kConfig, "element edge must be > 0");
  auto cells = [edge](double extent) {
    return std::max<long>(1, static_cast<long>(std::ceil(extent / edge - 1e-9)));
  };
  const double L = room.length, W = room.width, H = room.height;
  const long nl = cells(L), nw = cells(W), nh = cells(H);
  const double total = 2.0 * (nw * nh + nl * nh + nl * nw);
  if (total > static_cast<double>(max_elements)) {
    throw Error(ErrorKind::kResource,
                "surface discretization needs " +
                    std::to_string(static_cast<long long>(total)) +
                    " elements, cap is " + std::to_string(max_elements));
  }
  std::vector<SurfaceElement> out;
  out.reserve(static_cast<size_t>(total));
  const double dl = L / nl, dw = W / nw, dh = H / nh;
  for (long j = 0; j < nw; ++j) {
    for (long k = 0; k < nh; ++k) {
      const double y = (j + 0.5) * dw, z = (k + 0.5) * dh;
      out.push_back({{0.0, y, z}, {1.0, 0.0, 0.0}, dw * dh, Surface::kWallX0});
      out.push_back({{L, y, z}, {-1.0, 0.0, 0.0}, dw * dh, Surface::kWallXL});
    }
  }
  for (long i = 0; i < nl; ++i) {
    for (long k = 0; k < nh; ++k) {
      const double x = (i + 0.5) * dl, z = (k + 0.5) * dh;
      out.push_back({{x, 0.0, z}, {0.0, 1.0, 0.0}, dl * dh, Surface::kWallY0});
      out.push_back({{x, W, z}, {0.0, -1.0, 0.0}, dl * dh, Surface::kWallYW});
    }
  }
  for (long i = 0; i < nl; ++i) {
    for (long j = 0; j < nw; ++j) {
      const double x = (i + 0.5) * dl, y = (j + 0.5) * dw;
      out.push_back({{x, y, H}, {0.0, 0.0, -1.0}, dl * dw, Surface::kCeiling});
      out.push_back({{x, y, 0.0}, {0.0, 0.0, 1.0}, dl * dw, Surface::kFloor});
    }
  }
  return out;
}

double ImpulseResponse::TotalPower() const {
  double total = 0.0;
  for (double p : bin_power_w) total += p;
  return total;
}

double LambertianOrder(double half_power_semi_angle_deg) {
  if (!(half_power_semi_angle_deg > 0.0 && half_power_semi_angle_deg < 90.0)) {
    throw Error(ErrorKind::kDomain,
                "half-power semi-angle must lie in (0, 90) degrees");
  }
  return -std::log(2.0) / std::log(std::cos(DegToRad(half_power_semi_angle_deg)));
}

double LosGain(const AccessPoint& ap, const ReceiverSpec& rx,
               const Vec3& rx_position) {
  const double d = (rx_position - ap.position).Norm();
  if (d == 0.0) {
    throw Error(ErrorKind::kDegenerateGeometry,
                "receiver coincides with access point " + std::to_string(ap.id));
  }
  const double m = LambertianOrder(ap.half_power_semi_angle_deg);
  double dist = 0.0;
  return Transfer(ap.position, ap.normal, m, rx_position, rx.normal, rx.area_m2,
                  std::cos(DegToRad(rx.fov_deg)), &dist);
}

ImpulseResponse TraceImpulseResponse(const RoomConfig& room,
                                     const AccessPoint& ap,
                                     const ReceiverSpec& rx,
                                     const Vec3& rx_position,
                                     Wavelength wavelength, int max_order) {
  CheckMaxOrder(max_order);
  CheckInsideRoom(room, rx_position, "receiver");
  if ((rx_position - ap.position).Norm() == 0.0) {
    throw Error(ErrorKind::kDegenerateGeometry,
                "receiver coincides with access point " + std::to_string(ap.id));
  }
  const RoomGeometry geom = BuildGeometry(room, max_order);
  const std::vector<AccessPoint> aps{ap};
  const std::vector<Illumination> illum = IlluminateAll(aps, geom);
  std::vector<Histogram> hist(1, Histogram(room.time_bin_s, HistogramBins(room)));
  Accumulate(geom, aps, illum, rx, rx_position,
             RhoFor(room.reflectivity, wavelength), max_order, hist);
  ImpulseResponse ir = hist[0].ToResponse(ap.tx_power_w[Index(wavelength)]);
  ir.bin_width_s = room.time_bin_s;
  ir.ap_id = ap.id;
  ir.wavelength = wavelength;
  ir.rx_position = rx_position;
  return ir;
}

double DelaySpread(const ImpulseResponse& ir) {
  const double total = ir.TotalPower();
  if (!(total > 0.0)) {
    throw Error(ErrorKind::kDomain, "delay spread undefined for zero power");
  }
  // Times relative to bin 0 keep the subtraction well conditioned.
  double mean = 0.0;
  for (size_t i = 0; i < ir.bin_power_w.size(); ++i) {
    mean += ir.bin_power_w[i] * static_cast<double>(i) * ir.bin_width_s;
  }
  mean /= total;
  double var = 0.0;
  for (size_t i = 0; i < ir.bin_power_w.size(); ++i) {
    const double dt = static_cast<double>(i) * ir.bin_width_s - mean;
    var += ir.bin_power_w[i] * dt * dt;
  }
  return std::sqrt(var / total);
}

namespace {

double NormalizedMagnitude(const std::vector<double>& p, double bin_width,
                           double total, double f) {
  std::complex<double> h{0.0, 0.0};
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    const double phase = -2.0 * kPi * f * static_cast<double>(i) * bin_width;
    h += p[i] * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return std::abs(h) / total;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
struct PlanDestroy {
  void operator()(fftw_plan p) const { fftw_destroy_plan(p); }
};

}  // namespace

double Bandwidth3dB(const ImpulseResponse& ir, int zero_padding, double cap_hz) {
  const double total = ir.TotalPower();
  if (!(total > 0.0)) {
    throw Error(ErrorKind::kDomain, "bandwidth undefined for zero power");
  }
  const size_t n_bins = ir.bin_power_w.size();
  size_t n = 1;
  while (n < n_bins * static_cast<size_t>(std::max(1, zero_padding))) n <<= 1;
  n = std::max<size_t>(n, 2);

  std::unique_ptr<double, FftwFree> in(fftw_alloc_real(n));
  std::unique_ptr<fftw_complex, FftwFree> out(fftw_alloc_complex(n / 2 + 1));
  std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDestroy> plan(
      fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(),
                           FFTW_ESTIMATE));
  std::fill(in.get(), in.get() + n, 0.0);
  std::copy(ir.bin_power_w.begin(), ir.bin_power_w.end(), in.get());
  fftw_execute(plan.get());

  const double threshold = 1.0 / std::sqrt(2.0);
  const double df = 1.0 / (static_cast<double>(n) * ir.bin_width_s);
  for (size_t k = 1; k <= n / 2; ++k) {
    const double mag = std::hypot(out.get()[k][0], out.get()[k][1]) / total;
    if (mag > threshold) continue;
    // Refine between the last sample above and this one on the continuous
    // transform.
    double lo = static_cast<double>(k - 1) * df;
    double hi = static_cast<double>(k) * df;
    for (int it = 0; it < 100 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (NormalizedMagnitude(ir.bin_power_w, ir.bin_width_s, total, mid) >
          threshold) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return std::min(hi, cap_hz);
  }
  return cap_hz;
}

double BaseDataRate(double bandwidth_3db_hz, const ReceiverSpec& rx) {
  return rx.rate_factor * std::min(bandwidth_3db_hz, rx.bandwidth_hz);
}

double SupportedDataRate(const ChannelRecord& record, const ReceiverSpec& rx,
                         double sinr_db) {
  if (!(sinr_db >= kSinrFloorDb)) {
    throw InfeasibleError("sinr_floor",
                          "SINR " + std::to_string(sinr_db) +
                              " dB is below the 14 dB floor");
  }
  double rate = BaseDataRate(record.bandwidth_3db_hz, rx);
  if (sinr_db < kFecFreeSinrDb) rate *= kFecRateFactor;
  return rate;
}

ChannelRecord MakeRecord(const ImpulseResponse& ir, double tx_power_w,
                         const ReceiverSpec& rx, int zero_padding,
                         double cap_hz) {
  ChannelRecord rec;
  rec.user_x = ir.rx_position.x;
  rec.user_y = ir.rx_position.y;
  rec.ap_id = ir.ap_id;
  rec.wavelength = ir.wavelength;
  rec.rx_power_w = ir.TotalPower();
  rec.dc_gain = rec.rx_power_w / tx_power_w;
  if (rec.rx_power_w > 0.0) {
    rec.delay_spread_s = DelaySpread(ir);
    rec.bandwidth_3db_hz = Bandwidth3dB(ir, zero_padding, cap_hz);
    rec.rate_bps = BaseDataRate(rec.bandwidth_3db_hz, rx);
  }
  return rec;
}

std::vector<ChannelRecord> CharacterizeLocations(
    const RoomConfig& room, const ReceiverSpec& rx,
    const std::vector<std::pair<double, double>>& locations, int max_order) {
  CheckMaxOrder(max_order);
  room.Validate();
  rx.Validate();
  const auto& aps = room.access_points;
  const size_t n_aps = aps.size();
  const RoomGeometry geom = BuildGeometry(room, max_order);
  const std::vector<Illumination> illum = IlluminateAll(aps, geom);

  // Wavelengths sharing a reflectivity profile share one trace.
  std::map<SurfaceRho, std::vector<Wavelength>> groups;
  for (Wavelength w : kAllWavelengths) {
    groups[RhoFor(room.reflectivity, w)].push_back(w);
  }

  std::vector<ChannelRecord> records(locations.size() * n_aps * kNumWavelengths);
  std::vector<Histogram> hist(n_aps,
                              Histogram(room.time_bin_s, HistogramBins(room)));
  const double cap = room.BandwidthCap();
  for (size_t li = 0; li < locations.size(); ++li) {
    const Vec3 pos{locations[li].first, locations[li].second,
                   room.receiver_plane_height};
    CheckInsideRoom(room, pos, "user location");
    for (const auto& [rho, wavelengths] : groups) {
      for (Histogram& h : hist) h.Clear();
      Accumulate(geom, aps, illum, rx, pos, rho, max_order, hist);
      for (size_t a = 0; a < n_aps; ++a) {
        for (Wavelength w : wavelengths) {
          const double tx = aps[a].tx_power_w[Index(w)];
          ImpulseResponse ir = hist[a].ToResponse(tx);
          ir.bin_width_s = room.time_bin_s;
          ir.ap_id = aps[a].id;
          ir.wavelength = w;
          ir.rx_position = pos;
          ChannelRecord rec = MakeRecord(ir, tx, rx, room.zero_padding, cap);
          rec.user_x = pos.x;
          rec.user_y = pos.y;
          records[(li * n_aps + a) * kNumWavelengths + Index(w)] = rec;
        }
      }
    }
  }
  return records;
}

std::vector<double> SecondOrderPower(const RoomConfig& room,
                                     const ReceiverSpec& rx,
                                     const Vec3& rx_position,
                                     Wavelength wavelength) {
  RoomGeometry geom;
  geom.second = DiscretizeRoom(room, room.second_order_element_edge,
                               room.max_elements);
  const auto& aps = room.access_points;
  const std::vector<Illumination> illum = IlluminateAll(aps, geom);
  std::vector<Histogram> second(aps.size(),
                                Histogram(room.time_bin_s, HistogramBins(room)));
  Accumulate(geom, aps, illum, rx, rx_position,
             RhoFor(room.reflectivity, wavelength), 2, second,
             /*include_lower=*/false);
  std::vector<double> out(aps.size());
  for (size_t a = 0; a < aps.size(); ++a) {
    out[a] = second[a].ToResponse(aps[a].tx_power_w[Index(wavelength)])
                 .TotalPower();
  }
  return out;
}

}  // namespace owcfog::channel
