#include "gne/codec.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "gne/bigint.hpp"
#include "gne/entropy.hpp"
#include "gne/errors.hpp"
#include "gne/hybrid.hpp"
#include "gne/models.hpp"

namespace gne {

namespace {

constexpr uint8_t kMagic[4] = {'G', 'N', 'C', '1'};
constexpr uint64_t kProbScale = 1ull << 32;

// ---------------------------------------------------------------- range coder

// 64-bit range coder with carry propagation.  low is kept in 128 bits so a
// carry out of the 64-bit window shows up as bit 64 and can be pushed into
// the already-buffered bytes (0xFF runs collapse under the carry).
class RangeEncoder {
  public:
    explicit RangeEncoder(std::vector<uint8_t>& out) : out_(out) {}

    void encode(uint64_t cum, uint64_t freq, uint64_t total) {
        uint64_t r = range_ / total;
        low_ += (unsigned __int128)r * cum;
        range_ = r * freq;
        while (range_ < kTop) {
            shift_low();
            range_ <<= 8;
        }
    }

    void encode_bit(bool bit, uint64_t f_one) {
        if (bit)
            encode(0, f_one, kProbScale);
        else
            encode(f_one, kProbScale - f_one, kProbScale);
    }

    // Emits the fewest bytes that pin the final interval: rounds low up to
    // a multiple of 2^56 (the interval is at least that wide after
    // renormalization) so at most two more data bytes follow the cache.
    void finish() {
        uint64_t low64 = (uint64_t)low_;
        uint64_t pad = (uint64_t)(0 - low64) & (kTop - 1);
        low_ += pad;
        shift_low();
        shift_low();
    }

  private:
    static constexpr uint64_t kTop = 1ull << 56;

    void shift_low() {
        uint64_t low64 = (uint64_t)low_;
        uint64_t carry = (uint64_t)(low_ >> 64);
        if (carry != 0 || low64 < 0xFF00000000000000ull) {
            if (has_cache_) out_.push_back((uint8_t)(cache_ + carry));
            for (; ff_run_ > 0; --ff_run_) out_.push_back((uint8_t)(0xFF + carry));
            cache_ = (uint8_t)(low64 >> 56);
            has_cache_ = true;
        } else {
            ++ff_run_;
        }
        low_ = (unsigned __int128)(low64 << 8);
    }

    std::vector<uint8_t>& out_;
    unsigned __int128 low_ = 0;
    uint64_t range_ = ~0ull;
    uint8_t cache_ = 0;
    uint64_t ff_run_ = 0;
    bool has_cache_ = false;
};

class RangeDecoder {
  public:
    RangeDecoder(const uint8_t* data, size_t size) : data_(data), size_(size) {
        for (int i = 0; i < 8; ++i) code_ = code_ << 8 | next_byte();
    }

    uint64_t decode_target(uint64_t total) {
        r_ = range_ / total;
        uint64_t t = code_ / r_;
        return t >= total ? total - 1 : t;
    }

    void consume(uint64_t cum, uint64_t freq) {
        code_ -= r_ * cum;
        range_ = r_ * freq;
        while (range_ < kTop) {
            code_ = code_ << 8 | next_byte();
            range_ <<= 8;
        }
    }

    bool decode_bit(uint64_t f_one) {
        uint64_t t = decode_target(kProbScale);
        bool bit = t < f_one;
        if (bit)
            consume(0, f_one);
        else
            consume(f_one, kProbScale - f_one);
        return bit;
    }

  private:
    static constexpr uint64_t kTop = 1ull << 56;

    uint8_t next_byte() { return pos_ < size_ ? data_[pos_++] : 0; }

    const uint8_t* data_;
    size_t size_;
    size_t pos_ = 0;
    uint64_t code_ = 0;
    uint64_t range_ = ~0ull;
    uint64_t r_ = 0;
};

uint64_t bernoulli_freq(double p) {
    double f = std::nearbyint(p * (double)kProbScale);
    if (f < 1.0) f = 1.0;
    if (f > (double)(kProbScale - 1)) f = (double)(kProbScale - 1);
    return (uint64_t)f;
}

// ---------------------------------------------------------------- byte stream

void put_u64(std::vector<uint8_t>& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back((uint8_t)(v >> (8 * i)));
}

void put_f64(std::vector<uint8_t>& out, double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u64(out, bits);
}

struct Reader {
    const std::vector<uint8_t>& data;
    size_t pos = 0;

    uint8_t u8() {
        if (pos + 1 > data.size()) throw DecodeError("truncated stream", pos);
        return data[pos++];
    }
    uint64_t u64() {
        if (pos + 8 > data.size()) throw DecodeError("truncated stream", pos);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= (uint64_t)data[pos + i] << (8 * i);
        pos += 8;
        return v;
    }
    double f64() {
        uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, 8);
        return v;
    }
};

// ------------------------------------------------------------------ model glue

struct ModelInfo {
    uint8_t tag;
    uint64_t n;
    double alpha;
    double beta = 0.0;
    uint32_t a = 2;
    uint32_t len = 0;
    bool has_names = false;   // ErNamed name-set block
    bool hybrid = false;
};

ModelInfo model_info(const CodecModel& model) {
    return std::visit(
        [](const auto& m) -> ModelInfo {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, CodecErBinary>) {
                uint32_t len = 0;
                while ((1ull << len) < m.n) ++len;
                return {1, m.n, m.alpha, 0.0, 2, len, false, false};
            } else if constexpr (std::is_same_v<T, CodecErNamed>) {
                return {2, m.n, m.alpha, m.beta, m.a, name_length(m.n, m.beta, m.a),
                        true, false};
            } else {
                return {3, m.n, m.alpha, m.beta, m.a, name_length(m.n, m.beta, m.a),
                        false, true};
            }
        },
        model);
}

void check_graph(const ModelInfo& info, const GraphWithNames& g) {
    gne::validate(g);
    if (g.num_vertices() != info.n) throw ValidationError("graph size does not match model");
    if (g.a != info.a || g.len != info.len)
        throw ValidationError("graph name shape does not match model");
    if (g.ordered != info.hybrid)
        throw ValidationError("graph ordered flag does not match model");
    if (info.tag == 1) {
        for (uint64_t v = 0; v < info.n; ++v)
            if (g.names[v] != binary_name(v, info.len))
                throw ValidationError("name not in the model's name space");
    }
    if (info.has_names) {
        for (uint64_t v = 1; v < info.n; ++v)
            if (!(g.names[v - 1] < g.names[v]))
                throw ValidationError("ernamed codec requires names in ascending order");
    }
}

uint64_t name_value(const std::string& name, uint32_t a) {
    uint64_t v = 0;
    for (char c : name) v = v * a + (uint64_t)letter_index(c, a);
    return v;
}

std::string value_name(uint64_t v, uint32_t a, uint32_t len) {
    std::string s(len, kLetters[0]);
    for (uint32_t i = len; i-- > 0;) {
        s[i] = kLetters[v % a];
        v /= a;
    }
    return s;
}

// ---------------------------------------------------- ErNamed name-set ranking

// Colex rank of the ascending value set within C(A^L, N):
//   rank = sum_i C(v_i, i+1).
// Unranking locates each element with a log-gamma guess, then verifies and
// adjusts with exact big-integer comparisons.

uint64_t universe_size(uint32_t a, uint32_t len) {
    double bits = (double)len * std::log2((double)a);
    if (bits > 62.5) throw CapacityError("name universe exceeds 2^63; rank codec unavailable");
    uint64_t u = 1;
    for (uint32_t i = 0; i < len; ++i) u *= a;
    return u;
}

BigUint name_set_rank(const GraphWithNames& g) {
    BigUint rank;
    for (uint64_t i = 0; i < g.num_vertices(); ++i) {
        uint64_t v = name_value(g.names[i], g.a);
        rank.add(big_choose(v, i + 1));
    }
    return rank;
}

double log_choose_f(double m, double k) {
    if (k > m) return -1e300;
    return std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0);
}

std::vector<uint64_t> name_set_unrank(BigUint rank, uint64_t n, uint64_t universe) {
    std::vector<uint64_t> values(n);
    uint64_t hi = universe - 1;  // v_i <= hi
    for (uint64_t i = n; i-- > 0;) {
        uint64_t k = i + 1;
        // float guess for the largest v with C(v, k) <= rank
        double target = rank.is_zero() ? -1e300 : rank.log_value();
        uint64_t lo = k - 1, up = hi;
        while (lo < up) {
            uint64_t mid = lo + (up - lo + 1) / 2;
            if (log_choose_f((double)mid, (double)k) <= target + 1e-9)
                lo = mid;
            else
                up = mid - 1;
        }
        // exact adjustment around the guess
        BigUint c = big_choose(lo, k);
        while (c.compare(rank) > 0) {
            // C(v-1, k) = C(v, k) * (v-k) / v
            c.mul_small(lo - k);
            c.div_small(lo);
            --lo;
        }
        for (;;) {
            if (lo + 1 > hi) break;
            BigUint next = big_choose(lo + 1, k);
            if (next.compare(rank) > 0) break;
            c = next;
            ++lo;
        }
        values[i] = lo;
        rank.sub(c);
        hi = lo - 1;  // strictly decreasing as i descends
    }
    if (!rank.is_zero()) throw DecodeError("invalid name-set rank", 0);
    return values;
}

// ------------------------------------------------------------------- ER edges

template <typename EdgeBit>
void walk_pairs(uint64_t n, const std::vector<std::pair<uint32_t, uint32_t>>& edges,
                EdgeBit&& f) {
    size_t e = 0;
    for (uint32_t i = 0; i + 1 < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j) {
            bool present = e < edges.size() && edges[e].first == i && edges[e].second == j;
            if (present) ++e;
            f(present);
        }
    if (e != edges.size()) throw ValidationError("edge list is not in canonical order");
}

void encode_er_edges(RangeEncoder& rc, uint64_t n, double p,
                     const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
    uint64_t f1 = bernoulli_freq(p);
    walk_pairs(n, edges, [&](bool present) { rc.encode_bit(present, f1); });
}

std::vector<std::pair<uint32_t, uint32_t>> decode_er_edges(RangeDecoder& rc, uint64_t n,
                                                           double p) {
    uint64_t f1 = bernoulli_freq(p);
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (uint32_t i = 0; i + 1 < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j)
            if (rc.decode_bit(f1)) edges.emplace_back(i, j);
    return edges;
}

// ------------------------------------------------------------- hybrid ordered

std::vector<std::vector<uint32_t>> lower_adjacency(const GraphWithNames& g) {
    std::vector<std::vector<uint32_t>> adj(g.num_vertices());
    for (auto [u, v] : g.edges) adj[v].push_back(u);  // canonical order keeps u ascending
    return adj;
}

// ----------------------------------------------------------------- public API

}  // namespace

void validate(const CodecModel& model) {
    ModelInfo info = model_info(model);
    if (info.n < 2) throw ValidationError("need at least 2 vertices");
    if (!(info.alpha > 0.0 && info.alpha < (double)info.n))
        throw ValidationError("alpha must be in (0, N)");
    if (info.tag != 1) {
        if (!(info.beta > 1.0)) throw ValidationError("beta must be > 1");
        if (info.a < 2 || info.a > kMaxAlphabet)
            throw ValidationError("alphabet size out of range");
    }
}

const char* codec_tag(const CodecModel& model) {
    switch (model_info(model).tag) {
        case 1: return "erbinary";
        case 2: return "ernamed";
        default: return "hybrid-ordered";
    }
}

uint32_t crc32(const uint8_t* data, size_t size) {
    static uint32_t table[256];
    static bool init = false;
    if (!init) {
        for (uint32_t i = 0; i < 256; ++i) {
            uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = c & 1 ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            table[i] = c;
        }
        init = true;
    }
    uint32_t c = 0xFFFFFFFFu;
    for (size_t i = 0; i < size; ++i) c = table[(c ^ data[i]) & 0xFF] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

std::vector<uint8_t> encode(const CodecModel& model, const GraphWithNames& g) {
    validate(model);
    ModelInfo info = model_info(model);
    check_graph(info, g);

    std::vector<uint8_t> out(kMagic, kMagic + 4);
    out.push_back(info.tag);
    put_u64(out, info.n);
    put_f64(out, info.alpha);
    if (info.tag != 1) {
        put_f64(out, info.beta);
        put_u64(out, info.a);
    }

    std::vector<uint8_t> name_block;
    if (info.has_names) {
        uint64_t universe = universe_size(info.a, info.len);
        if (info.n > 10000)
            throw CapacityError("name-set ranking limited to N <= 10^4");
        BigUint rank = name_set_rank(g);
        BigUint max_rank = big_choose(universe, info.n);
        size_t width = std::max<size_t>(max_rank.bit_length(), 1);
        name_block.assign((width + 7) / 8, 0);
        for (size_t b = 0; b < width; ++b)
            if (rank.bit(b)) name_block[b / 8] |= (uint8_t)(1 << (b % 8));
    }

    std::vector<uint8_t> payload;
    RangeEncoder rc(payload);
    double p = info.alpha / (double)info.n;
    if (info.hybrid) {
        uint64_t f1 = bernoulli_freq(p);
        auto adj = lower_adjacency(g);
        std::vector<uint32_t> counts(info.a, 0);
        for (uint64_t v = 0; v < info.n; ++v) {
            const auto& parents = adj[v];
            size_t at = 0;
            for (uint32_t i = 0; i < v; ++i) {
                bool present = at < parents.size() && parents[at] == i;
                if (present) ++at;
                rc.encode_bit(present, f1);
            }
            uint32_t q = (uint32_t)parents.size();
            uint64_t total = (uint64_t)(q + 1) * info.a;
            for (uint32_t u = 0; u < info.len; ++u) {
                for (uint32_t i : parents)
                    counts[(uint32_t)letter_index(g.names[i][u], info.a)]++;
                uint32_t target = (uint32_t)letter_index(g.names[v][u], info.a);
                uint64_t cum = 0;
                for (uint32_t s = 0; s < target; ++s) cum += 1 + (uint64_t)info.a * counts[s];
                uint64_t freq = 1 + (uint64_t)info.a * counts[target];
                rc.encode(cum, freq, total);
                for (uint32_t i : parents)
                    counts[(uint32_t)letter_index(g.names[i][u], info.a)] = 0;
            }
        }
        rc.finish();
    } else {
        encode_er_edges(rc, info.n, p, g.edges);
        rc.finish();
    }

    if (info.has_names) put_u64(out, name_block.size());
    put_u64(out, payload.size());
    out.insert(out.end(), name_block.begin(), name_block.end());
    out.insert(out.end(), payload.begin(), payload.end());
    uint32_t crc = crc32(out.data(), out.size());
    for (int i = 0; i < 4; ++i) out.push_back((uint8_t)(crc >> (8 * i)));
    return out;
}

GraphWithNames decode(const CodecModel& model, const std::vector<uint8_t>& stream) {
    validate(model);
    ModelInfo info = model_info(model);
    if (stream.size() < 4 + 1 + 8 + 8 + 8 + 4) throw DecodeError("stream too short", 0);
    uint32_t stored_crc = 0;
    for (int i = 0; i < 4; ++i)
        stored_crc |= (uint32_t)stream[stream.size() - 4 + i] << (8 * i);
    if (crc32(stream.data(), stream.size() - 4) != stored_crc)
        throw DecodeError("checksum mismatch", stream.size() - 4);

    Reader rd{stream};
    if (std::memcmp(stream.data(), kMagic, 4) != 0) throw DecodeError("bad magic", 0);
    rd.pos = 4;
    uint8_t tag = rd.u8();
    if (tag != info.tag) throw DecodeError("model tag mismatch", rd.pos - 1);
    uint64_t n = rd.u64();
    double alpha = rd.f64();
    if (n != info.n || alpha != info.alpha)
        throw DecodeError("model parameters mismatch", rd.pos);
    if (info.tag != 1) {
        double beta = rd.f64();
        uint64_t a = rd.u64();
        if (beta != info.beta || a != info.a)
            throw DecodeError("model parameters mismatch", rd.pos);
    }
    uint64_t name_len_bytes = info.has_names ? rd.u64() : 0;
    uint64_t payload_len = rd.u64();
    if (rd.pos + name_len_bytes + payload_len + 4 != stream.size())
        throw DecodeError("stream length mismatch", rd.pos);

    GraphWithNames g;
    g.a = info.a;
    g.len = info.len;
    g.ordered = info.hybrid;
    g.names.resize(info.n);

    if (info.has_names) {
        uint64_t universe = universe_size(info.a, info.len);
        BigUint rank;
        for (uint64_t b = 0; b < name_len_bytes * 8; ++b)
            if (stream[rd.pos + b / 8] >> (b % 8) & 1) rank.set_bit(b);
        BigUint max_rank = big_choose(universe, info.n);
        if (rank.compare(max_rank) >= 0)
            throw DecodeError("name-set rank out of range", rd.pos);
        auto values = name_set_unrank(rank, info.n, universe);
        for (uint64_t v = 0; v < info.n; ++v)
            g.names[v] = value_name(values[v], info.a, info.len);
        rd.pos += name_len_bytes;
    } else if (info.tag == 1) {
        for (uint64_t v = 0; v < info.n; ++v) g.names[v] = binary_name(v, info.len);
    }

    RangeDecoder rc(stream.data() + rd.pos, payload_len);
    double p = info.alpha / (double)info.n;
    if (info.hybrid) {
        uint64_t f1 = bernoulli_freq(p);
        std::vector<uint32_t> parents;
        std::vector<uint32_t> counts(info.a, 0);
        std::string name(info.len, kLetters[0]);
        for (uint64_t v = 0; v < info.n; ++v) {
            parents.clear();
            for (uint32_t i = 0; i < v; ++i)
                if (rc.decode_bit(f1)) {
                    parents.push_back(i);
                    g.edges.emplace_back(i, (uint32_t)v);
                }
            uint32_t q = (uint32_t)parents.size();
            uint64_t total = (uint64_t)(q + 1) * info.a;
            for (uint32_t u = 0; u < info.len; ++u) {
                for (uint32_t i : parents)
                    counts[(uint32_t)letter_index(g.names[i][u], info.a)]++;
                uint64_t t = rc.decode_target(total);
                uint64_t cum = 0;
                uint32_t letter = 0;
                for (;; ++letter) {
                    uint64_t freq = 1 + (uint64_t)info.a * counts[letter];
                    if (cum + freq > t) {
                        rc.consume(cum, freq);
                        break;
                    }
                    cum += freq;
                }
                name[u] = kLetters[letter];
                for (uint32_t i : parents)
                    counts[(uint32_t)letter_index(g.names[i][u], info.a)] = 0;
            }
            g.names[v] = name;
        }
        canonicalize_edges(g);
    } else {
        g.edges = decode_er_edges(rc, info.n, p);
    }
    return g;
}

double ideal_codelength(const CodecModel& model, const GraphWithNames& g) {
    validate(model);
    ModelInfo info = model_info(model);
    check_graph(info, g);
    double p = info.alpha / (double)info.n;
    double log2p = std::log2(p);
    double log2q = std::log1p(-p) / std::log(2.0);
    double bits = 0.0;
    if (info.hybrid) {
        auto adj = lower_adjacency(g);
        std::vector<uint32_t> counts(info.a, 0);
        double log2_sum = 0.0;
        for (uint64_t v = 0; v < info.n; ++v) {
            const auto& parents = adj[v];
            uint32_t q = (uint32_t)parents.size();
            log2_sum -= (double)q * log2p + (double)(v - q) * log2q;
            double denom = (double)(q + 1) * (double)info.a;
            for (uint32_t u = 0; u < info.len; ++u) {
                for (uint32_t i : parents)
                    counts[(uint32_t)letter_index(g.names[i][u], info.a)]++;
                uint32_t letter = (uint32_t)letter_index(g.names[v][u], info.a);
                log2_sum -= std::log2((1.0 + (double)info.a * counts[letter]) / denom);
                for (uint32_t i : parents)
                    counts[(uint32_t)letter_index(g.names[i][u], info.a)] = 0;
            }
        }
        bits = log2_sum;
    } else {
        double pairs = 0.5 * (double)info.n * (double)(info.n - 1);
        double e = (double)g.num_edges();
        bits = -(e * log2p + (pairs - e) * log2q);
        if (info.has_names)
            bits += log_choose_pow(info.a, info.len, info.n) / std::log(2.0);
    }
    if (!std::isfinite(bits)) throw ValidationError("zero-probability realization");
    return bits;
}

StreamLayout stream_layout(const CodecModel& model, const std::vector<uint8_t>& stream) {
    ModelInfo info = model_info(model);
    Reader rd{stream};
    rd.pos = 5 + 8 + 8;  // magic, tag, n, alpha
    if (info.tag != 1) rd.pos += 16;
    uint64_t name_bytes = info.has_names ? rd.u64() : 0;
    uint64_t payload = rd.u64();
    return {stream.size() - (size_t)payload - (size_t)name_bytes,
            (size_t)(payload + name_bytes)};
}

}  // namespace gne
