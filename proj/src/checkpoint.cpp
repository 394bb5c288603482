#include "tcgan/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <limits>

#include "tcgan/errors.hpp"

namespace tcgan {

namespace {

constexpr char kMagic[8] = {'T', 'C', 'G', 'A', 'N', 'C', 'K', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::vector<std::uint8_t>& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& buf, double v) {
  put_u64(buf, std::bit_cast<std::uint64_t>(v));
}

void put_string(std::vector<std::uint8_t>& buf, const std::string& s) {
  put_u32(buf, static_cast<std::uint32_t>(s.size()));
  buf.insert(buf.end(), s.begin(), s.end());
}

struct Reader {
  const std::uint8_t* p;
  std::size_t left;

  void need(std::size_t n) const {
    if (left < n) throw FormatError("checkpoint: truncated file");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    p += 4;
    left -= 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    p += 8;
    left -= 8;
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string string() {
    const std::uint32_t n = u32();
    need(n);
    std::string s(reinterpret_cast<const char*>(p), n);
    p += n;
    left -= n;
    return s;
  }
  std::vector<std::uint8_t> bytes(std::size_t n) {
    need(n);
    std::vector<std::uint8_t> out(p, p + n);
    p += n;
    left -= n;
    return out;
  }
};

std::uint64_t fnv1a(const std::uint8_t* data, std::size_t n) {
  std::uint64_t h = 14695981039346656037ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= data[i];
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

void save_checkpoint(const CheckpointRecord& record, const std::string& path) {
  std::vector<std::uint8_t> body;
  put_u32(body, kVersion);
  put_u64(body, record.header_json.size());
  body.insert(body.end(), record.header_json.begin(), record.header_json.end());
  put_u32(body, static_cast<std::uint32_t>(record.arrays.size()));
  for (const auto& arr : record.arrays) {
    put_string(body, arr.name);
    put_u32(body, static_cast<std::uint32_t>(arr.shape.size()));
    std::size_t numel = 1;
    for (std::size_t dim : arr.shape) {
      put_u64(body, dim);
      numel *= dim;
    }
    if (numel != arr.data.size())
      throw ContractError("checkpoint: array '" + arr.name +
                          "' shape does not match data length");
    for (double v : arr.data) put_f64(body, v);
  }
  put_u32(body, static_cast<std::uint32_t>(record.blobs.size()));
  for (const auto& blob : record.blobs) {
    put_string(body, blob.name);
    put_u64(body, blob.bytes.size());
    body.insert(body.end(), blob.bytes.begin(), blob.bytes.end());
  }

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw FormatError("checkpoint: cannot open for writing: " + path);
  os.write(kMagic, sizeof(kMagic));
  os.write(reinterpret_cast<const char*>(body.data()),
           static_cast<std::streamsize>(body.size()));
  std::vector<std::uint8_t> tail;
  put_u64(tail, fnv1a(body.data(), body.size()));
  os.write(reinterpret_cast<const char*>(tail.data()),
           static_cast<std::streamsize>(tail.size()));
  if (!os) throw FormatError("checkpoint: write failed: " + path);
}

CheckpointRecord load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("checkpoint: cannot open: " + path);
  std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(is)),
                                std::istreambuf_iterator<char>());
  if (raw.size() < sizeof(kMagic) + 4 + 8)
    throw FormatError("checkpoint: file too small");
  if (std::memcmp(raw.data(), kMagic, sizeof(kMagic)) != 0)
    throw FormatError("checkpoint: bad magic");
  const std::size_t body_len = raw.size() - sizeof(kMagic) - 8;
  const std::uint8_t* body = raw.data() + sizeof(kMagic);
  Reader tail{raw.data() + sizeof(kMagic) + body_len, 8};
  if (fnv1a(body, body_len) != tail.u64())
    throw FormatError("checkpoint: checksum mismatch (corrupted file)");

  Reader r{body, body_len};
  const std::uint32_t version = r.u32();
  if (version != kVersion)
    throw FormatError("checkpoint: unsupported format version " +
                      std::to_string(version));
  CheckpointRecord record;
  const std::uint64_t header_len = r.u64();
  r.need(header_len);
  record.header_json.assign(reinterpret_cast<const char*>(r.p), header_len);
  r.p += header_len;
  r.left -= header_len;

  const std::uint32_t array_count = r.u32();
  record.arrays.reserve(array_count);
  for (std::uint32_t i = 0; i < array_count; ++i) {
    NamedArray arr;
    arr.name = r.string();
    const std::uint32_t ndim = r.u32();
    std::size_t numel = 1;
    for (std::uint32_t dd = 0; dd < ndim; ++dd) {
      const std::uint64_t dim = r.u64();
      if (dim == 0 || dim > (1ULL << 32))
        throw FormatError("checkpoint: implausible dimension in '" + arr.name +
                          "'");
      arr.shape.push_back(static_cast<std::size_t>(dim));
      numel *= static_cast<std::size_t>(dim);
    }
    if (numel > r.left / 8 + 1)
      throw FormatError("checkpoint: truncated array '" + arr.name + "'");
    arr.data.resize(numel);
    for (std::size_t e = 0; e < numel; ++e) arr.data[e] = r.f64();
    record.arrays.push_back(std::move(arr));
  }
  const std::uint32_t blob_count = r.u32();
  record.blobs.reserve(blob_count);
  for (std::uint32_t i = 0; i < blob_count; ++i) {
    NamedBlob blob;
    blob.name = r.string();
    const std::uint64_t len = r.u64();
    blob.bytes = r.bytes(static_cast<std::size_t>(len));
    record.blobs.push_back(std::move(blob));
  }
  if (r.left != 0) throw FormatError("checkpoint: trailing bytes");
  return record;
}

}  // namespace tcgan
