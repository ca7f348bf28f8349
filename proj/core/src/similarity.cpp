#include "swiftnorm/similarity.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include "swiftnorm/error.hpp"
#include "swiftnorm/parallel.hpp"

namespace swiftnorm {

namespace {

struct Block {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t size = 0;
};

struct Range {
  std::size_t alo, ahi, blo, bhi;
};

// Rolling DP rows reused across calls on the same thread.
struct Scratch {
  std::vector<std::uint32_t> prev;
  std::vector<std::uint32_t> cur;
  std::vector<Range> stack;
};

Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

Block longest_match(std::string_view a, std::string_view b, const Range& r, Scratch& s) {
  const std::size_t width = r.bhi - r.blo;
  s.prev.assign(width + 1, 0);
  s.cur.assign(width + 1, 0);
  Block best{r.alo, r.blo, 0};
  for (std::size_t i = r.alo; i < r.ahi; ++i) {
    const char ca = a[i];
    for (std::size_t j = 0; j < width; ++j) {
      s.cur[j + 1] = (b[r.blo + j] == ca) ? s.prev[j] + 1 : 0;
    }
    // Ascending scan with strict '>' keeps the earliest start in a, then in b.
    for (std::size_t j = 0; j < width; ++j) {
      const std::size_t k = s.cur[j + 1];
      if (k > best.size) best = Block{i + 1 - k, r.blo + j + 1 - k, k};
    }
    std::swap(s.prev, s.cur);
  }
  return best;
}

void put_u64(std::ofstream& out, std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap64(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

}  // namespace

std::size_t matching_characters(std::string_view a, std::string_view b) {
  if (a.empty() || b.empty()) return 0;
  Scratch& s = scratch();
  s.stack.clear();
  s.stack.push_back(Range{0, a.size(), 0, b.size()});
  std::size_t total = 0;
  while (!s.stack.empty()) {
    const Range r = s.stack.back();
    s.stack.pop_back();
    const Block m = longest_match(a, b, r, s);
    if (m.size == 0) continue;
    total += m.size;
    if (r.alo < m.a && r.blo < m.b) s.stack.push_back(Range{r.alo, m.a, r.blo, m.b});
    if (m.a + m.size < r.ahi && m.b + m.size < r.bhi) {
      s.stack.push_back(Range{m.a + m.size, r.ahi, m.b + m.size, r.bhi});
    }
  }
  return total;
}

double ratcliff_obershelp(std::string_view a, std::string_view b) {
  const std::size_t len = a.size() + b.size();
  if (len == 0) return 1.0;
  return 2.0 * static_cast<double>(matching_characters(a, b)) / static_cast<double>(len);
}

Matrix similarity_matrix(const Corpus& corpus, std::size_t threads) {
  const std::size_t m = corpus.forms.size();
  Matrix sim(m, m);
  // Row i owns the pairs (i, j > i); row costs shrink with i, so use small blocks.
  parallel_for_range(m, 8, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      sim(i, i) = 1.0;
      const std::string& si = corpus.forms[i].sorted_text;
      for (std::size_t j = i + 1; j < m; ++j) {
        const double v = ratcliff_obershelp(si, corpus.forms[j].sorted_text);
        sim(i, j) = v;
        sim(j, i) = v;
      }
    }
  });
  return sim;
}

std::string corpus_fingerprint(const Corpus& corpus) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](unsigned char c) {
    h ^= c;
    h *= 0x100000001b3ULL;
  };
  for (const auto& form : corpus.forms) {
    for (const char c : form.sorted_text) feed(static_cast<unsigned char>(c));
    feed('\n');
  }
  static constexpr char digits[] = "0123456789abcdef";
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i) {
    hex[static_cast<std::size_t>(i)] = digits[h & 0xF];
    h >>= 4;
  }
  return hex;
}

void write_similarity_cache(const std::filesystem::path& path, const Matrix& matrix) {
  if (matrix.rows() != matrix.cols()) throw Error("similarity cache expects a square matrix");
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write similarity cache: " + tmp);
    out.write(kSimilarityCacheMagic.data(), 8);
    put_u64(out, static_cast<std::uint64_t>(matrix.rows()));
    if constexpr (std::endian::native == std::endian::little) {
      out.write(reinterpret_cast<const char*>(matrix.data()),
                static_cast<std::streamsize>(matrix.size() * sizeof(double)));
    } else {
      for (Eigen::Index i = 0; i < matrix.size(); ++i) {
        put_u64(out, std::bit_cast<std::uint64_t>(matrix.data()[i]));
      }
    }
    if (!out) throw InputError("failed writing similarity cache: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::optional<Matrix> read_similarity_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;

  std::array<char, 8> magic{};
  in.read(magic.data(), 8);
  if (!in || std::string_view(magic.data(), 8) != kSimilarityCacheMagic) {
    throw Error("not a similarity cache file: " + path.string());
  }
  std::uint64_t m = 0;
  in.read(reinterpret_cast<char*>(&m), sizeof m);
  if constexpr (std::endian::native == std::endian::big) m = __builtin_bswap64(m);
  if (!in || m > (1ULL << 20)) throw Error("corrupt similarity cache header: " + path.string());

  Matrix sim(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  in.read(reinterpret_cast<char*>(sim.data()), static_cast<std::streamsize>(m * m * sizeof(double)));
  if (!in) throw Error("truncated similarity cache: " + path.string());
  if constexpr (std::endian::native == std::endian::big) {
    for (Eigen::Index i = 0; i < sim.size(); ++i) {
      sim.data()[i] = std::bit_cast<double>(__builtin_bswap64(std::bit_cast<std::uint64_t>(sim.data()[i])));
    }
  }
  return sim;
}

std::filesystem::path similarity_cache_path(const std::filesystem::path& cache_dir,
                                            const Corpus& corpus) {
  return cache_dir / ("similarity-" + corpus_fingerprint(corpus) + ".bin");
}

}  // namespace swiftnorm
