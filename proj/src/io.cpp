#include "helical/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace helical {

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

struct Header {
  std::string kind;
  double eps = 0.0;
  int n = 0;
};

Header parse_header(const std::string& line) {
  Header h;
  std::istringstream ss(line);
  std::string hash, kind, epstok, ntok;
  ss >> hash >> kind >> epstok >> ntok;
  if (hash != "#" || (kind != "spinfield" && kind != "angularfield" && kind != "chirality") ||
      epstok.rfind("eps=", 0) != 0 || ntok.rfind("n=", 0) != 0) {
    throw ParseError(1, "bad header, expected '# spinfield|angularfield eps=<v> n=<v>'");
  }
  h.kind = kind;
  try {
    h.eps = std::stod(epstok.substr(4));
    h.n = std::stoi(ntok.substr(2));
  } catch (const std::exception&) {
    throw ParseError(1, "bad header numbers");
  }
  return h;
}

template <typename PerNode>
void write_field(const std::string& path, const char* kind, const Grid& g, PerNode&& emit) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "# " << kind << " eps=" << format17(g.eps()) << " n=" << g.n() << "\n";
  const int n = g.n();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      out << i << " " << j << " " << emit(i, j) << "\n";
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

template <typename PerNode>
Header read_field(const std::string& path, const char* expected_kind, PerNode&& absorb) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "empty file");
  const Header h = parse_header(line);
  if (h.kind != expected_kind) {
    throw ParseError(1, std::string("expected a ") + expected_kind + " file, got " + h.kind);
  }
  if (!(h.eps > 0.0) || !(h.eps < 0.5)) throw ParseError(1, "eps out of range");
  int lineno = 1;
  long expected = static_cast<long>(h.n) * h.n;
  long seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    int i, j;
    double a, b;
    if (!(ss >> i >> j >> a >> b)) {
      throw ParseError(lineno, "malformed record at line " + std::to_string(lineno));
    }
    if (i < 0 || j < 0 || i >= h.n || j >= h.n) {
      throw ParseError(lineno, "node index out of range at line " + std::to_string(lineno));
    }
    absorb(i, j, a, b);
    ++seen;
  }
  if (seen != expected) {
    throw ParseError(lineno, "expected " + std::to_string(expected) + " node lines, found " +
                                 std::to_string(seen));
  }
  return h;
}

}  // namespace

void write_spinfield(const std::string& path, const SpinField& u) {
  write_field(path, "spinfield", u.grid, [&](int i, int j) {
    const Vec2 s = u.at(i, j);
    return format17(s.x) + " " + format17(s.y);
  });
}

SpinField read_spinfield(const std::string& path) {
  // probe header first to size the grid
  std::ifstream probe(path);
  if (!probe) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(probe, line)) throw ParseError(1, "empty file");
  const Header h = parse_header(line);
  Grid g(h.eps);
  if (g.n() != h.n) {
    throw ParseError(1, "header n=" + std::to_string(h.n) + " inconsistent with eps (expected " +
                            std::to_string(g.n()) + ")");
  }
  SpinField u(g);
  read_field(path, "spinfield", [&](int i, int j, double a, double b) {
    u.at(i, j) = Vec2{a, b};
  });
  return u;
}

void write_angularfield(const std::string& path, const AngularField& th) {
  write_field(path, "angularfield", th.grid, [&](int i, int j) {
    return format17(th.hor_at(i, j)) + " " + format17(th.ver_at(i, j));
  });
}

AngularField read_angularfield(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(probe, line)) throw ParseError(1, "empty file");
  const Header h = parse_header(line);
  Grid g(h.eps);
  if (g.n() != h.n) {
    throw ParseError(1, "header n=" + std::to_string(h.n) + " inconsistent with eps (expected " +
                            std::to_string(g.n()) + ")");
  }
  AngularField th(g);
  read_field(path, "angularfield", [&](int i, int j, double a, double b) {
    th.hor_at(i, j) = a;
    th.ver_at(i, j) = b;
  });
  return th;
}

void write_chirality(const std::string& path, const ChiralityField& c) {
  write_field(path, "chirality", c.grid, [&](int i, int j) {
    return format17(c.w_at(i, j)) + " " + format17(c.z_at(i, j));
  });
}

ChiralityField read_chirality(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(probe, line)) throw ParseError(1, "empty file");
  const Header h = parse_header(line);
  Grid g(h.eps);
  if (g.n() != h.n) {
    throw ParseError(1, "header n=" + std::to_string(h.n) + " inconsistent with eps (expected " +
                            std::to_string(g.n()) + ")");
  }
  ChiralityField c(g);
  read_field(path, "chirality", [&](int i, int j, double a, double b) {
    c.w[g.idx(i, j)] = a;
    c.z[g.idx(i, j)] = b;
  });
  return c;
}

FieldKind peek_field_kind(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "empty file");
  return parse_header(line).kind == "spinfield" ? FieldKind::Spin : FieldKind::Angular;
}

}  // namespace helical
