#pragma once

#include <string>

#include "smelldep/support/rand.hpp"

// Seeded generators for small, always-parseable Java classes. Property tests
// and the acceptance checks build corpora from these instead of shipping
// hundreds of fixture files.
namespace testgen {

// Foreign-data provider referenced by generated method bodies.
inline const char* pool_source() {
  return R"(class Pool {
  private int p0;
  private int p1;
  private int p2;
  public int getP0() { return p0; }
  public int getP1() { return p1; }
  public int getP2() { return p2; }
}
)";
}

// One random class: 0-5 int fields (mixed visibility), getters for a prefix
// of them, 0-6 methods whose bodies mix own-field writes, foreign getter
// reads, locals, and nested ifs. Deterministic for a given Rng state.
inline std::string random_class(smelldep::Rng& rng, const std::string& name) {
  int fields = static_cast<int>(rng.bounded(6));
  int getters = fields == 0 ? 0 : static_cast<int>(rng.bounded(static_cast<std::uint64_t>(fields) + 1));
  int methods = static_cast<int>(rng.bounded(7));

  std::string s = "class " + name + " {\n";
  for (int i = 0; i < fields; ++i) {
    s += std::string("  ") + (rng.bounded(2) == 0 ? "public" : "private") + " int f" +
         std::to_string(i) + ";\n";
  }
  for (int i = 0; i < getters; ++i) {
    s += "  public int getF" + std::to_string(i) + "() { return f" + std::to_string(i) +
         "; }\n";
  }
  for (int m = 0; m < methods; ++m) {
    s += "  int m" + std::to_string(m) + "(Pool q, int x) {\n";
    s += "    int acc = x;\n";
    int depth = static_cast<int>(rng.bounded(4));
    std::string pad = "    ";
    for (int d = 0; d < depth; ++d) {
      s += pad + "if (acc > " + std::to_string(d) + ") {\n";
      pad += "  ";
    }
    int stmts = 1 + static_cast<int>(rng.bounded(3));
    for (int k = 0; k < stmts; ++k) {
      int pick = static_cast<int>(rng.bounded(4));
      if (pick == 1 && fields == 0) pick = 0;
      switch (pick) {
        case 0:
          s += pad + "acc = acc + 1;\n";
          break;
        case 1:
          s += pad + "f" + std::to_string(rng.bounded(static_cast<std::uint64_t>(fields))) +
               " = acc;\n";
          break;
        case 2:
          s += pad + "acc = acc + q.getP" + std::to_string(rng.bounded(3)) + "();\n";
          break;
        default:
          s += pad + "int t" + std::to_string(k) + " = acc * 2;\n";
          s += pad + "acc = t" + std::to_string(k) + ";\n";
          break;
      }
    }
    for (int d = depth; d > 0; --d) {
      pad.resize(pad.size() - 2);
      s += pad + "}\n";
    }
    s += "    return acc;\n  }\n";
  }
  s += "}\n";
  return s;
}

}  // namespace testgen
