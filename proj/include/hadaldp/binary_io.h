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

#ifndef HADALDP_BINARY_IO_H_
#define HADALDP_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"

namespace hadaldp {

// Little-endian primitive writer over a byte string.
class ByteWriter {
 public:
  void U8(uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void U16(uint16_t v) { Le(v, 2); }
  void U32(uint32_t v) { Le(v, 4); }
  void U64(uint64_t v) { Le(v, 8); }
  void F64(double v) { U64(std::bit_cast<uint64_t>(v)); }
  void Bytes(std::string_view s) { out_.append(s); }

  const std::string& data() const { return out_; }
  std::string Take() && { return std::move(out_); }

 private:
  void Le(uint64_t v, int width) {
    for (int i = 0; i < width; ++i) {
      out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
  }
  std::string out_;
};

// Little-endian primitive reader; every accessor fails on truncation.
class ByteReader {
 public:
  explicit ByteReader(std::string_view in) : in_(in) {}

  absl::StatusOr<uint8_t> U8() {
    absl::StatusOr<uint64_t> v = Le(1);
    if (!v.ok()) return v.status();
    return static_cast<uint8_t>(*v);
  }
  absl::StatusOr<uint16_t> U16() {
    absl::StatusOr<uint64_t> v = Le(2);
    if (!v.ok()) return v.status();
    return static_cast<uint16_t>(*v);
  }
  absl::StatusOr<uint32_t> U32() {
    absl::StatusOr<uint64_t> v = Le(4);
    if (!v.ok()) return v.status();
    return static_cast<uint32_t>(*v);
  }
  absl::StatusOr<uint64_t> U64() { return Le(8); }
  absl::StatusOr<double> F64() {
    absl::StatusOr<uint64_t> v = Le(8);
    if (!v.ok()) return v.status();
    return std::bit_cast<double>(*v);
  }
  absl::StatusOr<std::string_view> Bytes(size_t n) {
    if (in_.size() - pos_ < n) return Truncated();
    std::string_view s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  size_t remaining() const { return in_.size() - pos_; }

 private:
  static absl::Status Truncated() {
    return absl::DataLossError("unexpected end of binary blob");
  }
  absl::StatusOr<uint64_t> Le(int width) {
    if (in_.size() - pos_ < static_cast<size_t>(width)) return Truncated();
    uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<uint64_t>(static_cast<uint8_t>(in_[pos_ + i]))
           << (8 * i);
    }
    pos_ += width;
    return v;
  }
  std::string_view in_;
  size_t pos_ = 0;
};

}  // namespace hadaldp

#endif  // HADALDP_BINARY_IO_H_
