#include "lrf/field.hpp"

#include <fstream>
#include <sstream>

namespace lrf {

void dump_field(const LatticeField& f, const FieldDumpMeta& meta, const std::string& path) {
  f.validate();
  std::ofstream bin(path, std::ios::binary | std::ios::trunc);
  if (!bin) throw IoError("dump_field: cannot open " + path);
  bin.write(reinterpret_cast<const char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (!bin) throw IoError("dump_field: write failed for " + path);

  std::ofstream hdr(path + ".hdr", std::ios::trunc);
  if (!hdr) throw IoError("dump_field: cannot open " + path + ".hdr");
  hdr << "n=" << meta.n << "\n";
  hdr << "shape=";
  for (int a = 0; a < meta.n; ++a) hdr << (a ? "," : "") << meta.shape[a];
  hdr << "\n";
  hdr << "spacing=" << f.spacing << "\n";
  hdr << "seed=" << meta.seed << "\n";
  hdr << "alpha=" << meta.alpha << "\n";
  if (!hdr) throw IoError("dump_field: header write failed for " + path + ".hdr");
}

LatticeField load_field(const std::string& path) {
  std::ifstream hdr(path + ".hdr");
  if (!hdr) throw IoError("load_field: cannot open " + path + ".hdr");
  LatticeField f;
  std::string line;
  while (std::getline(hdr, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    if (key == "n") {
      f.n = std::stoi(val);
    } else if (key == "spacing") {
      f.spacing = std::stod(val);
    } else if (key == "shape") {
      std::istringstream ss(val);
      std::string tok;
      int a = 0;
      while (std::getline(ss, tok, ',') && a < 3) f.shape[a++] = std::stoull(tok);
    }
  }
  for (int a = 0; a < f.n; ++a) f.origin[a] = static_cast<std::ptrdiff_t>(f.shape[a] / 2);
  f.values.resize(f.size());
  std::ifstream bin(path, std::ios::binary);
  if (!bin) throw IoError("load_field: cannot open " + path);
  bin.read(reinterpret_cast<char*>(f.values.data()),
           static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (bin.gcount() != static_cast<std::streamsize>(f.values.size() * sizeof(double)))
    throw IoError("load_field: short read from " + path);
  return f;
}

}  // namespace lrf
