#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opmi/search.hpp"

namespace opmi {

/// On-disk layout (all integers little-endian):
///   magic "OPMI" | u8 version | u8 mode | u8 coder | u16 q | u32 B | u64 n
///   two section entries: 4-byte tag ("CSA\0", "DELT"), u64 length, u64 offset
///   section payloads, byte-aligned, lengths exactly as declared
inline constexpr char kIndexMagic[4] = {'O', 'P', 'M', 'I'};
inline constexpr std::uint8_t kIndexVersion = 1;

struct SectionSizes {
  std::uint64_t header_bytes = 0;
  std::uint64_t csa_bytes = 0;
  std::uint64_t delta_bytes = 0;
  std::uint64_t total() const { return header_bytes + csa_bytes + delta_bytes; }
};

std::vector<std::uint8_t> serialize_index(const OpmIndex& index);
OpmIndex deserialize_index(std::span<const std::uint8_t> bytes);

void save_index(const OpmIndex& index, const std::string& path);
OpmIndex load_index(const std::string& path);

/// Byte sizes of the container sections as they would appear on disk.
SectionSizes index_section_sizes(const OpmIndex& index);

}  // namespace opmi
