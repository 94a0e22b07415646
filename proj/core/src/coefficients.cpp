#include "satotate/coefficients.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "satotate/error.hpp"
#include "satotate/primes.hpp"

namespace satotate {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

bool parse_u64(std::string_view s, std::uint64_t& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_integer(const std::string& s, Integer& out) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  out = Integer(s);
  return true;
}

// "n a(n)" with a single space.
struct Record {
  std::uint64_t n;
  Integer value;
};

std::optional<Record> parse_record(const std::string& line, std::size_t line_no) {
  const std::string body = trim(line);
  if (body.empty() || body[0] == '#') return std::nullopt;
  const auto space = body.find(' ');
  if (space == std::string::npos || body.find(' ', space + 1) != std::string::npos)
    throw ParseError(line_no, "expected \"n a(n)\" separated by a single space");
  Record r;
  if (!parse_u64(std::string_view(body).substr(0, space), r.n) || r.n == 0)
    throw ParseError(line_no, "invalid index '" + body.substr(0, space) + "'");
  if (!parse_integer(body.substr(space + 1), r.value))
    throw ParseError(line_no, "invalid coefficient '" + body.substr(space + 1) + "'");
  return r;
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<Integer> elliptic_coefficients(const WeierstrassCurve& curve,
                                           const std::vector<std::uint64_t>& primes,
                                           const BuildOptions& options) {
  std::vector<Integer> values(primes.size());
  const auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint64_t p = primes[i];
      values[i] = p > options.fast_crossover ? ap_elliptic_fast(curve, p)
                                             : ap_elliptic(curve, p);
    }
  };
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1 || primes.size() < 2 * threads) {
    work(0, primes.size());
    return values;
  }
  // Strided blocks balance the O(p) naive region; each slot is written once,
  // so the result is independent of scheduling.
  std::vector<std::thread> pool;
  constexpr std::size_t kBlock = 256;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t b = t * kBlock; b < primes.size(); b += threads * kBlock)
        work(b, std::min(primes.size(), b + kBlock));
    });
  }
  for (auto& th : pool) th.join();
  return values;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Data, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

NewformSpec::NewformSpec(int weight, std::uint64_t level, std::string label,
                         CoefficientSource source)
    : weight_(weight), level_(level), label_(std::move(label)), source_(std::move(source)) {
  if (weight_ < 2 || weight_ % 2 != 0)
    throw Error(ErrorKind::Domain, "weight must be even and at least 2");
  if (level_ == 0) throw Error(ErrorKind::Domain, "level must be positive");
  if (label_.empty() || label_.find_first_of(" \t\n/\\") != std::string::npos)
    throw Error(ErrorKind::Domain, "label must be a non-empty word");
}

NewformSpec NewformSpec::elliptic_curve(const WeierstrassCurve& curve,
                                        std::uint64_t conductor, std::string label) {
  return NewformSpec(2, conductor, std::move(label), EllipticCurveSource{curve});
}

NewformSpec NewformSpec::eta_delta() { return NewformSpec(12, 1, "delta", EtaDeltaSource{}); }

NewformSpec NewformSpec::qexp_file(std::filesystem::path path, int weight,
                                   std::uint64_t level, std::string label) {
  return NewformSpec(weight, level, std::move(label), QExpansionFileSource{std::move(path)});
}

const Integer* CoefficientTable::find(std::uint64_t p) const {
  const auto it = entries_.find(p);
  return it == entries_.end() ? nullptr : &it->second;
}

void CoefficientTable::insert(std::uint64_t p, Integer a) {
  if (!is_ramified(p) && !satisfies_hasse(a, p, spec_.weight())) throw HasseViolation(p);
  entries_.insert_or_assign(p, std::move(a));
}

std::size_t CoefficientTable::unramified_count() const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [&](const auto& kv) { return !is_ramified(kv.first); }));
}

bool satisfies_hasse(const Integer& a, std::uint64_t p, int weight) {
  const Integer bound = 4 * boost::multiprecision::pow(Integer(p), static_cast<unsigned>(weight - 1));
  return a * a <= bound;
}

CoefficientTable read_qexp(std::istream& in, const NewformSpec& spec) {
  CoefficientTable table(spec);
  std::string line;
  std::size_t line_no = 0;
  std::uint64_t previous = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto record = parse_record(line, line_no);
    if (!record) continue;
    if (record->n <= previous)
      throw ParseError(line_no, "indices must be strictly ascending");
    previous = record->n;
    if (!is_prime(record->n)) continue;
    table.insert(record->n, std::move(record->value));
  }
  if (!table.empty()) table.set_x_max(table.entries().rbegin()->first);
  return table;
}

CoefficientTable ingest_qexp(const std::filesystem::path& path, const NewformSpec& spec) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Data, "cannot open q-expansion file " + path.string());
  return read_qexp(in, spec);
}

CoefficientTable build_coefficients(const NewformSpec& spec, std::uint64_t x_max,
                                    const BuildOptions& options) {
  CoefficientTable table(spec);
  extend_coefficients(table, x_max, options);
  return table;
}

void extend_coefficients(CoefficientTable& table, std::uint64_t x_max,
                         const BuildOptions& options) {
  const NewformSpec& spec = table.spec();
  if (table.x_max() && *table.x_max() >= x_max) return;

  if (const auto* ec = std::get_if<EllipticCurveSource>(&spec.source())) {
    const std::uint64_t start = table.x_max().value_or(0);
    auto primes = primes_up_to(x_max);
    std::erase_if(primes, [&](std::uint64_t p) { return p <= start; });
    auto values = elliptic_coefficients(ec->curve, primes, options);
    // commit in ascending p
    for (std::size_t i = 0; i < primes.size(); ++i) table.insert(primes[i], std::move(values[i]));
    table.set_x_max(x_max);
  } else if (std::holds_alternative<EtaDeltaSource>(spec.source())) {
    const auto tau = tau_table(static_cast<std::size_t>(std::max<std::uint64_t>(x_max, 1)));
    for (std::uint64_t p : primes_up_to(x_max)) table.insert(p, tau[p - 1]);
    table.set_x_max(x_max);
  } else {
    const auto& file = std::get<QExpansionFileSource>(spec.source());
    CoefficientTable ingested = ingest_qexp(file.path, spec);
    // The file must list every prime up to x_max.
    for (std::uint64_t p : primes_up_to(x_max)) {
      const Integer* a = ingested.find(p);
      if (!a)
        throw Error(ErrorKind::Coverage, "q-expansion file " + file.path.string() +
                                             " has no entry for p = " + std::to_string(p));
      table.insert(p, *a);
    }
    table.set_x_max(x_max);
  }
}

std::string source_hash(const NewformSpec& spec) {
  std::string description;
  if (const auto* ec = std::get_if<EllipticCurveSource>(&spec.source())) {
    const auto& c = ec->curve;
    description = "ec:" + std::to_string(c.a1) + "," + std::to_string(c.a2) + "," +
                  std::to_string(c.a3) + "," + std::to_string(c.a4) + "," +
                  std::to_string(c.a6);
  } else if (std::holds_alternative<EtaDeltaSource>(spec.source())) {
    description = "eta-delta";
  } else {
    description = "qexp:" + read_file(std::get<QExpansionFileSource>(spec.source()).path);
  }
  const std::uint64_t h = fnv1a(description);
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
  return buffer;
}

std::filesystem::path cache_path(const std::filesystem::path& cache_dir,
                                 const NewformSpec& spec) {
  return cache_dir / (spec.label() + "_k" + std::to_string(spec.weight()) + "_N" +
                      std::to_string(spec.level()) + "_" + source_hash(spec) + ".qexp");
}

void write_cache(const CoefficientTable& table, std::ostream& out) {
  const auto& spec = table.spec();
  out << "# " << spec.label() << ' ' << spec.weight() << ' ' << spec.level() << ' '
      << table.x_max().value_or(0) << '\n';
  for (const auto& [p, a] : table.entries()) out << p << ' ' << a << '\n';
}

void write_cache(const CoefficientTable& table, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Data, "cannot write cache " + tmp.string());
    write_cache(table, out);
    if (!out) throw Error(ErrorKind::Data, "failed writing cache " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

CoefficientTable read_cache(std::istream& in, const NewformSpec& spec) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError(1, "missing cache header");
  std::istringstream hs(header);
  std::string hash, label;
  int k = 0;
  std::uint64_t level = 0, x_max = 0;
  if (!(hs >> hash >> label >> k >> level >> x_max) || hash != "#")
    throw ParseError(1, "expected \"# label k N x_max\"");
  if (label != spec.label() || k != spec.weight() || level != spec.level())
    throw Error(ErrorKind::Data, "cache header does not match newform " + spec.label());

  CoefficientTable table(spec);
  std::string line;
  std::size_t line_no = 1;
  std::uint64_t previous = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto record = parse_record(line, line_no);
    if (!record) continue;
    if (record->n <= previous) throw ParseError(line_no, "indices must be strictly ascending");
    if (!is_prime(record->n)) throw ParseError(line_no, "cache index is not prime");
    previous = record->n;
    table.insert(record->n, std::move(record->value));
  }
  if (x_max > 0) table.set_x_max(x_max);
  return table;
}

CoefficientTable read_cache(const std::filesystem::path& path, const NewformSpec& spec) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Data, "cannot open cache " + path.string());
  return read_cache(in, spec);
}

CacheResult load_or_build(const NewformSpec& spec, std::uint64_t x_max,
                          const std::filesystem::path& cache_dir,
                          const BuildOptions& options) {
  const auto path = cache_path(cache_dir, spec);
  if (std::filesystem::exists(path)) {
    CoefficientTable table = read_cache(path, spec);
    if (table.x_max() && *table.x_max() >= x_max) return {std::move(table), true, path};
    extend_coefficients(table, x_max, options);
    write_cache(table, path);
    return {std::move(table), false, path};
  }
  CoefficientTable table = build_coefficients(spec, x_max, options);
  write_cache(table, path);
  return {std::move(table), false, path};
}

}  // namespace satotate
