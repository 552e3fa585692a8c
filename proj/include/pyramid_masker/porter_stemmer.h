// Copyright 2026 The Pyramid Masker Authors.
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

#ifndef PYRAMID_MASKER_PORTER_STEMMER_H_
#define PYRAMID_MASKER_PORTER_STEMMER_H_

#include <string>
#include <string_view>

namespace pyramid_masker {

// Classic Porter (1980) stemmer, including the two well-known departures of
// the reference C implementation ("bli" -> "ble", "logi" -> "log"). Input
// must be lower-case ASCII letters; anything else is returned unchanged.
std::string PorterStem(std::string_view word);

}  // namespace pyramid_masker

#endif  // PYRAMID_MASKER_PORTER_STEMMER_H_
