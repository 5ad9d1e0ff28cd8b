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

#include "owcfog/common.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace owcfog {

std::string_view WavelengthName(Wavelength w) {
  switch (w) {
    case Wavelength::kRed:
      return "red";
    case Wavelength::kYellow:
      return "yellow";
    case Wavelength::kGreen:
      return "green";
    case Wavelength::kBlue:
      return "blue";
  }
  return "?";
}

std::optional<Wavelength> ParseWavelength(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (Wavelength w : kAllWavelengths) {
    const std::string_view full = WavelengthName(w);
    if (s == full || (s.size() == 1 && s[0] == full[0])) return w;
  }
  return std::nullopt;
}

}  // namespace owcfog
