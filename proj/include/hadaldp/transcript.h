// Copyright 2026 The HadaLDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HADALDP_TRANSCRIPT_H_
#define HADALDP_TRANSCRIPT_H_

#include <cstdint>
#include <string>
#include <vector>

namespace hadaldp {

// One report as seen by the server. round 0 is a protocol's first report
// round, round 1 the heavy-hitter refinement round.
struct TranscriptEntry {
  uint64_t user;
  uint32_t round;
  double epsilon;
  uint8_t wire;  // 0x00 -> -1, 0x01 -> +1
};

using Transcript = std::vector<TranscriptEntry>;

// One wire byte per report, in transcript order.
inline std::string DumpWireBytes(const Transcript& transcript) {
  std::string out;
  out.reserve(transcript.size());
  for (const TranscriptEntry& e : transcript) {
    out.push_back(static_cast<char>(e.wire));
  }
  return out;
}

}  // namespace hadaldp

#endif  // HADALDP_TRANSCRIPT_H_
