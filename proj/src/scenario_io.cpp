#include "dipp/scenario_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dipp/errors.hpp"

namespace dipp {

namespace {

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_support(std::ostream& out, const char* label, const SupportSet& s) {
  out << label << ' ' << s.size();
  for (std::size_t i : s) out << ' ' << i;
  out << '\n';
}

void write_vector(std::ostream& out, const char* label, const Vector& v) {
  out << label << ' ' << v.size();
  for (Eigen::Index i = 0; i < v.size(); ++i) out << ' ' << fmt_real(v[i]);
  out << '\n';
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void expect(const std::string& word) {
    const std::string got = token();
    if (got != word) fail("expected '" + word + "', found '" + got + "'");
  }

  std::string token() {
    std::string t;
    if (!(in_ >> t)) fail("unexpected end of input");
    return t;
  }

  std::size_t count() {
    const std::string t = token();
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(t, &pos);
    } catch (const std::exception&) {
      fail("expected a count, found '" + t + "'");
    }
    if (pos != t.size() || t.front() == '-') fail("expected a count, found '" + t + "'");
    return static_cast<std::size_t>(v);
  }

  double real() {
    const std::string t = token();
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &pos);
    } catch (const std::exception&) {
      fail("expected a number, found '" + t + "'");
    }
    if (pos != t.size()) fail("expected a number, found '" + t + "'");
    return v;
  }

  SupportSet support(const std::string& label) {
    expect(label);
    const std::size_t n = count();
    std::vector<std::size_t> idx(n);
    for (auto& i : idx) i = count();
    return SupportSet(std::move(idx));
  }

  Vector vector(const std::string& label, std::size_t expected) {
    expect(label);
    const std::size_t n = count();
    if (n != expected) fail(label + ": length " + std::to_string(n) + ", expected " +
                            std::to_string(expected));
    Vector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = real();
    return v;
  }

  [[noreturn]] void fail(const std::string& msg) { throw IoError("scenario file: " + msg); }

 private:
  std::istream& in_;
};

}  // namespace

void write_scenario(std::ostream& out, const Scenario& s) {
  const auto& c = s.config;
  out << "dipp-scenario 1\n";
  out << "config N " << c.N << " M " << c.M << " J " << c.J << " I " << c.I << " L " << c.L
      << " smnr_db " << (c.smnr_db ? fmt_real(*c.smnr_db) : std::string("clean")) << " kind "
      << to_string(c.kind) << " seed " << c.master_seed << " matrix_realization "
      << c.matrix_realization << " data_realization " << c.data_realization << '\n';
  write_support(out, "common_support", s.common_support);
  for (std::size_t p = 0; p < s.nodes.size(); ++p) {
    const NodeData& n = s.nodes[p];
    out << "node " << p << '\n';
    write_support(out, "support", n.x.support);
    write_support(out, "individual", n.x.individual_part);
    write_vector(out, "x", n.x.values);
    out << "A " << n.A.rows() << ' ' << n.A.cols() << '\n';
    for (Eigen::Index i = 0; i < n.A.rows(); ++i) {
      for (Eigen::Index j = 0; j < n.A.cols(); ++j) {
        if (j > 0) out << ' ';
        out << fmt_real(n.A(i, j));
      }
      out << '\n';
    }
    write_vector(out, "e", n.noise);
    write_vector(out, "y", n.y);
  }
}

Scenario read_scenario(std::istream& in) {
  Reader r(in);
  r.expect("dipp-scenario");
  if (r.count() != 1) r.fail("unsupported version");
  Scenario s;
  auto& c = s.config;
  r.expect("config");
  r.expect("N"); c.N = r.count();
  r.expect("M"); c.M = r.count();
  r.expect("J"); c.J = r.count();
  r.expect("I"); c.I = r.count();
  r.expect("L"); c.L = r.count();
  r.expect("smnr_db");
  {
    const std::string t = r.token();
    if (t == "clean") {
      c.smnr_db.reset();
    } else {
      try {
        c.smnr_db = std::stod(t);
      } catch (const std::exception&) {
        r.fail("bad smnr_db '" + t + "'");
      }
    }
  }
  r.expect("kind");
  try {
    c.kind = parse_signal_kind(r.token());
  } catch (const InvalidArgument& e) {
    r.fail(e.what());
  }
  r.expect("seed"); c.master_seed = r.count();
  r.expect("matrix_realization"); c.matrix_realization = r.count();
  r.expect("data_realization"); c.data_realization = r.count();
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    r.fail(e.what());
  }

  s.common_support = r.support("common_support");
  for (std::size_t p = 0; p < c.L; ++p) {
    r.expect("node");
    if (r.count() != p) r.fail("nodes out of order");
    NodeData n;
    const SupportSet support = r.support("support");
    n.x.individual_part = r.support("individual");
    n.x.common_part = s.common_support;
    n.x.support = support;
    if (!(set_union(n.x.common_part, n.x.individual_part) == support)) {
      r.fail("node " + std::to_string(p) + ": support is not common plus individual");
    }
    n.x.values = r.vector("x", c.N);
    r.expect("A");
    if (r.count() != c.M || r.count() != c.N) r.fail("matrix shape does not match config");
    n.A.resize(static_cast<Eigen::Index>(c.M), static_cast<Eigen::Index>(c.N));
    for (Eigen::Index i = 0; i < n.A.rows(); ++i) {
      for (Eigen::Index j = 0; j < n.A.cols(); ++j) n.A(i, j) = r.real();
    }
    n.noise = r.vector("e", c.M);
    n.y = r.vector("y", c.M);
    s.nodes.push_back(std::move(n));
  }
  return s;
}

void save_scenario(const std::string& path, const Scenario& s) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_scenario(out, s);
  if (!out) throw IoError("write to '" + path + "' failed");
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_scenario(in);
}

}  // namespace dipp
