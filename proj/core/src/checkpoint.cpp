#include "dsqg/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "dsqg/error.hpp"

namespace dsqg {

namespace {

constexpr char kMagic[8] = {'S', 'Q', 'G', 'C', 'K', 'P', 'T', '1'};

static_assert(std::endian::native == std::endian::little,
              "the binary checkpoint layout is written natively as little-endian");

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw Error("truncated checkpoint");
  return v;
}

}  // namespace

CheckpointFormat parse_checkpoint_format(const std::string& s) {
  if (s == "binary") return CheckpointFormat::Binary;
  if (s == "csv") return CheckpointFormat::Csv;
  throw ConfigError("checkpoint format must be binary or csv, got '" + s + "'");
}

void write_checkpoint(const std::string& path, const SolverState& state, CheckpointFormat format) {
  const auto& a = state.theta;
  const DomainSpec& d = a.domain;
  if (format == CheckpointFormat::Binary) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path + " for writing");
    os.write(kMagic, sizeof kMagic);
    put<double>(os, d.L1);
    put<double>(os, d.L2);
    put<std::int32_t>(os, d.N1);
    put<std::int32_t>(os, d.N2);
    put<double>(os, state.t);
    os.write(reinterpret_cast<const char*>(a.coeffs.data()),
             std::streamsize(a.coeffs.size() * sizeof(double)));
    if (!os) throw Error("write failed for " + path);
    return;
  }
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path + " for writing");
  os << std::setprecision(17);
  os << "# t=" << state.t << " L1=" << d.L1 << " L2=" << d.L2 << " N1=" << d.N1 << " N2=" << d.N2
     << "\n";
  os << "j,k,coeff\n";
  for (int j = 1; j <= d.N1; ++j)
    for (int k = 1; k <= d.N2; ++k)
      if (a(j, k) != 0.0) os << j << "," << k << "," << a(j, k) << "\n";
  if (!os) throw Error("write failed for " + path);
}

SolverState read_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  char head[8] = {};
  is.read(head, sizeof head);
  if (is.gcount() == sizeof head && std::memcmp(head, kMagic, sizeof kMagic) == 0) {
    DomainSpec d;
    d.L1 = get<double>(is);
    d.L2 = get<double>(is);
    d.N1 = get<std::int32_t>(is);
    d.N2 = get<std::int32_t>(is);
    d.validate();
    SolverState s;
    s.t = get<double>(is);
    s.theta = SpectralField(d);
    if (!is.read(reinterpret_cast<char*>(s.theta.coeffs.data()),
                 std::streamsize(s.theta.coeffs.size() * sizeof(double))))
      throw Error("truncated checkpoint " + path);
    if (is.peek() != std::char_traits<char>::eof()) throw Error("trailing bytes in checkpoint " + path);
    return s;
  }
  is.clear();
  is.seekg(0);
  std::string line;
  std::getline(is, line);
  SolverState s;
  DomainSpec d;
  {
    std::istringstream hs(line);
    std::string tok;
    hs >> tok;
    if (tok != "#") throw Error(path + " is neither a binary nor a CSV checkpoint");
    int seen = 0;
    while (hs >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) throw Error("bad checkpoint header in " + path);
      const std::string key = tok.substr(0, eq);
      const double v = std::stod(tok.substr(eq + 1));
      if (key == "t") s.t = v, ++seen;
      else if (key == "L1") d.L1 = v, ++seen;
      else if (key == "L2") d.L2 = v, ++seen;
      else if (key == "N1") d.N1 = int(v), ++seen;
      else if (key == "N2") d.N2 = int(v), ++seen;
    }
    if (seen != 5) throw Error("incomplete checkpoint header in " + path);
  }
  d.validate();
  s.theta = SpectralField(d);
  std::getline(is, line);
  if (line != "j,k,coeff") throw Error("missing column header in " + path);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    int j = 0, k = 0;
    double v = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ls(line);
    if (!(ls >> j >> c1 >> k >> c2 >> v) || c1 != ',' || c2 != ',' || j < 1 || k < 1 || j > d.N1 ||
        k > d.N2)
      throw Error("bad checkpoint row '" + line + "' in " + path);
    s.theta(j, k) = v;
  }
  return s;
}

}  // namespace dsqg
