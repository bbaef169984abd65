#include "dpsi/prime_cache.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace dpsi {

namespace {

std::uint64_t fnv1a(const std::uint8_t* data, std::size_t n)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= data[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes)
{
    for (int i = 0; i < bytes; ++i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_varint(std::vector<std::uint8_t>& out, std::uint64_t v)
{
    while (v >= 0x80) {
        out.push_back(static_cast<std::uint8_t>(v | 0x80));
        v >>= 7;
    }
    out.push_back(static_cast<std::uint8_t>(v));
}

class Reader {
public:
    explicit Reader(const std::vector<std::uint8_t>& b) : buf_(b) {}

    std::uint64_t le(int bytes)
    {
        need(static_cast<std::size_t>(bytes));
        std::uint64_t v = 0;
        for (int i = 0; i < bytes; ++i)
            v |= std::uint64_t{buf_[pos_++]} << (8 * i);
        return v;
    }

    std::uint64_t varint()
    {
        std::uint64_t v = 0;
        for (int shift = 0; shift < 64; shift += 7) {
            need(1);
            const std::uint8_t byte = buf_[pos_++];
            v |= std::uint64_t{byte & 0x7fu} << shift;
            if (!(byte & 0x80))
                return v;
        }
        throw FormatError("prime cache: varint too long");
    }

    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return buf_.size() - pos_; }

private:
    void need(std::size_t n) const
    {
        if (buf_.size() - pos_ < n)
            throw FormatError("prime cache: truncated file");
    }

    const std::vector<std::uint8_t>& buf_;
    std::size_t pos_ = 0;
};

void check_header(Reader& r, const std::vector<std::uint8_t>& bytes)
{
    if (bytes.size() < 28 || std::memcmp(bytes.data(), kCacheMagic, 8) != 0)
        throw FormatError("prime cache: bad magic");
    r.le(8);
    const auto version = static_cast<std::uint32_t>(r.le(4));
    if (version != kCacheVersion)
        throw FormatError("prime cache: version " + std::to_string(version) + ", expected " +
                          std::to_string(kCacheVersion));
}

} // namespace

std::vector<std::uint8_t> PrimeTableCodec::encode(const PrimeTable& table)
{
    std::vector<std::uint8_t> out(kCacheMagic, kCacheMagic + 8);
    put_le(out, kCacheVersion, 4);
    put_le(out, table.limit_, 8);
    put_le(out, table.primes_.size(), 8);
    std::uint32_t prev = 0;
    for (std::uint32_t p : table.primes_) {
        put_varint(out, p - prev);
        prev = p;
    }
    for (std::size_t i = 0; i < table.primes_.size(); ++i) {
        put_le(out, std::bit_cast<std::uint64_t>(table.theta_value_[i]), 8);
        put_le(out, std::bit_cast<std::uint64_t>(table.theta_radius_[i]), 8);
    }
    put_le(out, fnv1a(out.data(), out.size()), 8);
    return out;
}

PrimeTable PrimeTableCodec::decode(const std::vector<std::uint8_t>& bytes)
{
    Reader r(bytes);
    check_header(r, bytes);
    if (bytes.size() < 36)
        throw FormatError("prime cache: truncated file");
    const std::size_t body = bytes.size() - 8;
    std::uint64_t stored_hash = 0;
    for (int i = 0; i < 8; ++i)
        stored_hash |= std::uint64_t{bytes[body + i]} << (8 * i);
    if (stored_hash != fnv1a(bytes.data(), body))
        throw FormatError("prime cache: checksum mismatch");

    PrimeTable t;
    t.limit_ = r.le(8);
    const std::uint64_t count = r.le(8);
    if (t.limit_ < 2 || t.limit_ > PrimeTable::kMaxLimit || count > t.limit_)
        throw FormatError("prime cache: implausible header");
    // Every varint takes at least one byte, every theta entry sixteen.
    if (r.remaining() < count * 17 + 8)
        throw FormatError("prime cache: truncated file");
    t.primes_.reserve(count);
    std::uint64_t p = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        p += r.varint();
        if (p > t.limit_ || (i > 0 && p <= t.primes_.back()))
            throw FormatError("prime cache: prime sequence is not increasing within the limit");
        t.primes_.push_back(static_cast<std::uint32_t>(p));
    }
    if (r.remaining() != count * 16 + 8)
        throw FormatError("prime cache: unexpected payload size");
    t.theta_value_.reserve(count);
    t.theta_radius_.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        t.theta_value_.push_back(std::bit_cast<double>(r.le(8)));
        t.theta_radius_.push_back(std::bit_cast<double>(r.le(8)));
    }
    return t;
}

void write_cache(const std::filesystem::path& file, const PrimeTable& table)
{
    const auto bytes = PrimeTableCodec::encode(table);
    if (file.has_parent_path())
        std::filesystem::create_directories(file.parent_path());
    auto tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw FormatError("prime cache: cannot write " + tmp.string());
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out)
            throw FormatError("prime cache: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, file);
}

static std::vector<std::uint8_t> slurp(const std::filesystem::path& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw FormatError("prime cache: cannot open " + file.string());
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

PrimeTable read_cache(const std::filesystem::path& file)
{
    return PrimeTableCodec::decode(slurp(file));
}

std::optional<CacheInfo> inspect_cache(const std::filesystem::path& file)
{
    std::error_code ec;
    if (!std::filesystem::is_regular_file(file, ec))
        return std::nullopt;
    std::vector<std::uint8_t> head(28);
    std::ifstream in(file, std::ios::binary);
    in.read(reinterpret_cast<char*>(head.data()), 28);
    if (in.gcount() != 28 || std::memcmp(head.data(), kCacheMagic, 8) != 0)
        return std::nullopt;
    Reader r(head);
    r.le(8);
    CacheInfo info;
    info.version = static_cast<std::uint32_t>(r.le(4));
    info.limit = r.le(8);
    info.count = r.le(8);
    info.file_size = std::filesystem::file_size(file);
    return info;
}

std::filesystem::path cache_file(const std::filesystem::path& dir)
{
    return dir / "primes.dpsi";
}

PrimeTable load_or_build(const std::filesystem::path& dir, std::uint64_t limit,
                         const SieveOptions& options)
{
    const auto file = cache_file(dir);
    if (auto info = inspect_cache(file); info && info->version == kCacheVersion &&
                                         info->limit >= limit) {
        try {
            PrimeTable cached = read_cache(file);
            return cached.limit() == limit ? cached : cached.truncated(limit);
        } catch (const FormatError&) {
            // fall through and rebuild
        }
    }
    PrimeTable t = build_table(limit, options);
    write_cache(file, t);
    return t;
}

} // namespace dpsi
