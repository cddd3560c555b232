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

#include "hadaldp/dataset.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "hadaldp/binary_io.h"
#include "hadaldp/random.h"

namespace hadaldp {
namespace {

constexpr char kDatasetMagic[] = "LDPD";
constexpr uint16_t kDatasetVersion = 1;

uint64_t MulMod(uint64_t a, uint64_t b, uint64_t d) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % d);
}

struct AffineShuffle {
  uint64_t a = 1;
  uint64_t b = 0;
};

AffineShuffle ShuffleFor(uint64_t d, uint64_t seed) {
  AffineShuffle f;
  if (d <= 1) return f;
  Stream rng = DeriveStream(seed, StreamPurpose::kDataset, 1);
  do {
    f.a = 1 + rng.Below(d - 1);
  } while (std::gcd(f.a, d) != 1);
  f.b = rng.Below(d);
  return f;
}

}  // namespace

absl::StatusOr<ZipfSampler> ZipfSampler::Create(uint64_t support, double s) {
  if (support == 0) {
    return absl::InvalidArgumentError("Zipf support must be positive");
  }
  if (!(s > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Zipf exponent must be positive, got ", s));
  }
  std::vector<double> cdf(support);
  double acc = 0.0;
  for (uint64_t r = 1; r <= support; ++r) {
    acc += std::pow(static_cast<double>(r), -s);
    cdf[r - 1] = acc;
  }
  for (double& c : cdf) c /= acc;
  cdf.back() = 1.0;
  return ZipfSampler(std::move(cdf), s);
}

double ZipfSampler::RankProbability(uint64_t rank) const {
  if (rank == 0 || rank > cdf_.size()) return 0.0;
  return rank == 1 ? cdf_[0] : cdf_[rank - 1] - cdf_[rank - 2];
}

uint64_t ZipfSampler::RankFor(double u) const {
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return static_cast<uint64_t>(it - cdf_.begin()) + 1;
}

uint64_t ZipfRankElement(uint64_t rank, uint64_t d, uint64_t seed) {
  if (d <= 1) return 0;
  const AffineShuffle f = ShuffleFor(d, seed);
  return (MulMod(f.a, (rank - 1) % d, d) + f.b) % d;
}

absl::StatusOr<Dataset> GenZipf(uint64_t n, uint64_t d,
                                const ZipfSampler& sampler, uint64_t seed) {
  if (d == 0) return absl::InvalidArgumentError("domain size must be >= 1");
  if (sampler.support() > d) {
    return absl::InvalidArgumentError(
        "Zipf support exceeds the domain size");
  }
  const AffineShuffle f = ShuffleFor(d, seed);
  Stream rng = DeriveStream(seed, StreamPurpose::kDataset, 0);
  Dataset out;
  out.d = d;
  out.seed = seed;
  out.elements.resize(n);
  for (uint64_t& e : out.elements) {
    const uint64_t rank = sampler.RankFor(rng.NextUnit());
    e = d <= 1 ? 0 : (MulMod(f.a, rank - 1, d) + f.b) % d;
  }
  return out;
}

absl::StatusOr<Dataset> GenZipf(uint64_t n, uint64_t d, double s,
                                uint64_t seed) {
  if (d == 0) return absl::InvalidArgumentError("domain size must be >= 1");
  absl::StatusOr<ZipfSampler> sampler =
      ZipfSampler::Create(std::min(d, kMaxZipfSupport), s);
  if (!sampler.ok()) return sampler.status();
  return GenZipf(n, d, *sampler, seed);
}

absl::StatusOr<Dataset> GenPlanted(
    uint64_t n, uint64_t d,
    const std::vector<std::pair<uint64_t, uint64_t>>& heavy, uint64_t seed) {
  if (d == 0) return absl::InvalidArgumentError("domain size must be >= 1");
  uint64_t committed = 0;
  std::vector<uint64_t> seen;
  for (const auto& [element, count] : heavy) {
    if (element >= d) {
      return absl::InvalidArgumentError(absl::StrCat(
          "planted element ", element, " outside domain of size ", d));
    }
    if (std::find(seen.begin(), seen.end(), element) != seen.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("planted element ", element, " listed twice"));
    }
    seen.push_back(element);
    committed += count;
  }
  if (committed > n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "planted counts total ", committed, " but only ", n, " users exist"));
  }
  Stream rng = DeriveStream(seed, StreamPurpose::kDataset, 2);
  Dataset out;
  out.d = d;
  out.seed = seed;
  out.elements.reserve(n);
  for (const auto& [element, count] : heavy) {
    out.elements.insert(out.elements.end(), count, element);
  }
  while (out.elements.size() < n) out.elements.push_back(rng.Below(d));
  for (uint64_t i = n; i > 1; --i) {
    std::swap(out.elements[i - 1], out.elements[rng.Below(i)]);
  }
  return out;
}

std::string EncodeBinary(const Dataset& dataset) {
  ByteWriter w;
  w.Bytes(std::string_view(kDatasetMagic, 4));
  w.U16(kDatasetVersion);
  w.U16(0);
  w.U64(dataset.d);
  w.U64(dataset.n());
  for (uint64_t e : dataset.elements) w.U64(e);
  return std::move(w).Take();
}

absl::StatusOr<Dataset> DecodeBinary(std::string_view bytes) {
  ByteReader r(bytes);
  absl::StatusOr<std::string_view> magic = r.Bytes(4);
  if (!magic.ok()) return magic.status();
  if (*magic != std::string_view(kDatasetMagic, 4)) {
    return absl::InvalidArgumentError("not a binary dataset");
  }
  absl::StatusOr<uint16_t> version = r.U16();
  if (!version.ok()) return version.status();
  if (*version != kDatasetVersion) {
    return absl::InvalidArgumentError(
        absl::StrCat("unsupported dataset version ", *version));
  }
  absl::StatusOr<uint16_t> reserved = r.U16();
  absl::StatusOr<uint64_t> d = reserved.ok() ? r.U64() : reserved.status();
  absl::StatusOr<uint64_t> n = d.ok() ? r.U64() : d.status();
  if (!n.ok()) return n.status();
  if (r.remaining() != *n * 8) {
    return absl::DataLossError(absl::StrCat("dataset header promises ", *n,
                                            " elements, payload holds ",
                                            r.remaining(), " bytes"));
  }
  Dataset out;
  out.d = *d;
  out.elements.resize(*n);
  for (uint64_t& e : out.elements) {
    e = *r.U64();
    if (e >= *d) {
      return absl::InvalidArgumentError(
          absl::StrCat("element ", e, " outside domain of size ", *d));
    }
  }
  return out;
}

std::string EncodeText(const Dataset& dataset) {
  std::string out = absl::StrCat("# d=", dataset.d, "\n");
  for (uint64_t e : dataset.elements) absl::StrAppend(&out, e, "\n");
  return out;
}

absl::StatusOr<Dataset> DecodeText(std::string_view text) {
  Dataset out;
  bool have_d = false;
  uint64_t max_element = 0;
  int line_no = 0;
  const absl::string_view body(text.data(), text.size());
  for (absl::string_view line : absl::StrSplit(body, '\n')) {
    ++line_no;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    if (absl::ConsumePrefix(&line, "#")) {
      line = absl::StripAsciiWhitespace(line);
      if (absl::ConsumePrefix(&line, "d=")) {
        if (!absl::SimpleAtoi(line, &out.d)) {
          return absl::InvalidArgumentError(
              absl::StrCat("line ", line_no, ": bad domain size"));
        }
        have_d = true;
      }
      continue;
    }
    uint64_t e = 0;
    if (!absl::SimpleAtoi(line, &e)) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": '", line, "' is not an element"));
    }
    max_element = std::max(max_element, e);
    out.elements.push_back(e);
  }
  if (!have_d) out.d = out.elements.empty() ? 1 : max_element + 1;
  if (!out.elements.empty() && max_element >= out.d) {
    return absl::InvalidArgumentError(absl::StrCat(
        "element ", max_element, " outside domain of size ", out.d));
  }
  return out;
}

absl::Status WriteDataset(const Dataset& dataset, const std::string& path,
                          bool text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) return absl::UnavailableError(absl::StrCat("cannot open ", path));
  const std::string bytes = text ? EncodeText(dataset) : EncodeBinary(dataset);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

absl::StatusOr<Dataset> ReadDataset(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << f.rdbuf();
  const std::string bytes = buffer.str();
  absl::StatusOr<Dataset> out =
      bytes.rfind(kDatasetMagic, 0) == 0 ? DecodeBinary(bytes)
                                          : DecodeText(bytes);
  if (!out.ok()) {
    return absl::Status(out.status().code(),
                        absl::StrCat(path, ": ", out.status().message()));
  }
  return out;
}

}  // namespace hadaldp
