// Copyright 2026 The qgroup Authors.
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

#include "qgroup/error.hpp"
#include "qgroup/qep.hpp"

namespace qgroup {
namespace {

constexpr std::uint8_t kMagic[4] = {'Q', 'E', 'P', '1'};
constexpr std::uint8_t kVersion = 1;

template <typename T>
void put(Bytes& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(v) >> (8 * i)));
  }
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint64_t offset() const { return pos_; }
  std::uint64_t remaining() const { return bytes_.size() - pos_; }

  template <typename T>
  T get() {
    if (remaining() < sizeof(T)) malformed(bytes_.size(), "truncated frame");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    }
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }

  [[noreturn]] static void malformed(std::uint64_t at, const std::string& what) {
    throw Error(ErrorCode::kMalformedFrame, what + " at byte " + std::to_string(at), at);
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::uint64_t pos_ = 0;
};

}  // namespace

Bytes serialize(const CiphertextFrame& frame) {
  const AbelianGroup& G = frame.group;
  Bytes out(std::begin(kMagic), std::end(kMagic));
  out.push_back(kVersion);
  put<std::uint16_t>(out, static_cast<std::uint16_t>(G.rank()));
  for (auto n : G.invariant_factors()) put<std::uint32_t>(out, static_cast<std::uint32_t>(n));
  put<std::uint64_t>(out, frame.elements.size());
  put<std::uint64_t>(out, frame.plaintext_length);
  for (const auto& x : frame.elements) {
    check_member(G, x);
    for (auto c : x.coords) put<std::uint32_t>(out, static_cast<std::uint32_t>(c));
  }
  return out;
}

CiphertextFrame deserialize(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  if (bytes.size() < 4 || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    Reader::malformed(0, "bad magic");
  }
  in.get<std::uint32_t>();
  if (in.get<std::uint8_t>() != kVersion) Reader::malformed(4, "unknown version");
  const auto k = in.get<std::uint16_t>();
  if (k == 0) Reader::malformed(5, "group with no factors");
  std::vector<std::int64_t> factors;
  std::int64_t order = 1;
  for (std::uint16_t j = 0; j < k; ++j) {
    const std::uint64_t at = in.offset();
    const auto n = static_cast<std::int64_t>(in.get<std::uint32_t>());
    if (n < 2) Reader::malformed(at, "invariant factor below 2");
    if (order > kMaxGroupOrder / n) Reader::malformed(at, "group too large");
    order *= n;
    factors.push_back(n);
  }
  const AbelianGroup G(factors);
  const auto count = in.get<std::uint64_t>();
  const auto length = in.get<std::uint64_t>();
  const std::uint64_t element_bytes = 4ULL * k;
  if (count > in.remaining() / element_bytes) {
    Reader::malformed(bytes.size(), "truncated frame");
  }
  CiphertextFrame frame{G, length, {}};
  frame.elements.reserve(count);
  for (std::uint64_t e = 0; e < count; ++e) {
    GroupElement x{std::vector<std::int64_t>(k)};
    for (std::uint16_t j = 0; j < k; ++j) {
      const std::uint64_t at = in.offset();
      x.coords[j] = static_cast<std::int64_t>(in.get<std::uint32_t>());
      if (x.coords[j] >= G.factor(j)) Reader::malformed(at, "coordinate not reduced");
    }
    frame.elements.push_back(std::move(x));
  }
  if (in.remaining() != 0) Reader::malformed(in.offset(), "trailing bytes");
  return frame;
}

}  // namespace qgroup
