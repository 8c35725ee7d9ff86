#include "opmi/container.hpp"

#include <cstring>
#include <fstream>

#include "opmi/serialize.hpp"

namespace opmi {

namespace {

constexpr char kTagCsa[4] = {'C', 'S', 'A', '\0'};
constexpr char kTagDelta[4] = {'D', 'E', 'L', 'T'};
constexpr std::uint64_t kHeaderBytes = 4 + 1 + 1 + 1 + 2 + 4 + 8 + 2 * (4 + 8 + 8);

void put_tag(ByteWriter& w, const char tag[4]) {
  for (int i = 0; i < 4; ++i) w.u8(static_cast<std::uint8_t>(tag[i]));
}

}  // namespace

std::vector<std::uint8_t> serialize_index(const OpmIndex& index) {
  ByteWriter csa;
  index.csa().save(csa);
  ByteWriter delta;
  index.delta_store().save(delta);

  ByteWriter out;
  for (char c : kIndexMagic) out.u8(static_cast<std::uint8_t>(c));
  out.u8(kIndexVersion);
  out.u8(static_cast<std::uint8_t>(index.params().mode));
  out.u8(static_cast<std::uint8_t>(index.coder()));
  out.u16(static_cast<std::uint16_t>(index.params().q));
  out.u32(index.block_size());
  out.u64(index.size());
  put_tag(out, kTagCsa);
  out.u64(csa.size());
  out.u64(kHeaderBytes);
  put_tag(out, kTagDelta);
  out.u64(delta.size());
  out.u64(kHeaderBytes + csa.size());
  out.bytes(csa.data());
  out.bytes(delta.data());
  return out.take();
}

OpmIndex deserialize_index(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  char magic[4];
  for (char& c : magic) c = static_cast<char>(in.u8());
  if (std::memcmp(magic, kIndexMagic, 4) != 0) throw CorruptContainer("not an index file");
  if (in.u8() != kIndexVersion) throw CorruptContainer("unsupported index version");
  std::uint8_t mode = in.u8();
  std::uint8_t coder = in.u8();
  if (mode > 1 || coder > 2) throw CorruptContainer("bad mode or coder");
  OrderParams params{static_cast<std::uint32_t>(in.u16()), static_cast<Mode>(mode)};
  std::uint32_t block_size = in.u32();
  std::uint64_t n = in.u64();
  if (params.q < kMinWindow || params.q > kMaxWindow || block_size < params.q || n == 0)
    throw CorruptContainer("bad index parameters");

  struct Section {
    char tag[4];
    std::uint64_t length, offset;
  } sec[2];
  for (auto& s : sec) {
    for (char& c : s.tag) c = static_cast<char>(in.u8());
    s.length = in.u64();
    s.offset = in.u64();
  }
  if (std::memcmp(sec[0].tag, kTagCsa, 4) != 0 || std::memcmp(sec[1].tag, kTagDelta, 4) != 0)
    throw CorruptContainer("unknown section tags");
  if (sec[0].offset != kHeaderBytes || sec[1].offset != sec[0].offset + sec[0].length ||
      sec[1].offset + sec[1].length != bytes.size())
    throw CorruptContainer("section table does not match file size");

  ByteReader csa_in(bytes.subspan(sec[0].offset, sec[0].length));
  CsaIndex csa = CsaIndex::load(csa_in);
  ByteReader delta_in(bytes.subspan(sec[1].offset, sec[1].length));
  CompressedDeltaStore ds = CompressedDeltaStore::load(delta_in);

  if (csa.text_length() != n || ds.n != n || csa.block_size() != block_size ||
      ds.block_size != block_size || ds.q != params.q || ds.mode != params.mode ||
      ds.coder != static_cast<Coder>(coder))
    throw CorruptContainer("sections disagree with the header");

  return OpmIndex(params, block_size, static_cast<Coder>(coder), std::move(csa), std::move(ds));
}

void save_index(const OpmIndex& index, const std::string& path) {
  std::vector<std::uint8_t> bytes = serialize_index(index);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InvalidInput("short write to '" + path + "'");
}

OpmIndex load_index(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::streamsize size = in.tellg();
  in.seekg(0);
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
  in.read(reinterpret_cast<char*>(bytes.data()), size);
  if (!in) throw CorruptContainer("short read from '" + path + "'");
  return deserialize_index(bytes);
}

SectionSizes index_section_sizes(const OpmIndex& index) {
  ByteWriter csa;
  index.csa().save(csa);
  ByteWriter delta;
  index.delta_store().save(delta);
  return {kHeaderBytes, csa.size(), delta.size()};
}

}  // namespace opmi
