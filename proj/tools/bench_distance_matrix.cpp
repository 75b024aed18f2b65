#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

#include "reqtax/metrics.hpp"
#include "reqtax/taxonomy.hpp"

using reqtax::DistanceMatrix;
using reqtax::Taxonomy;
using reqtax::TaxonomyNode;

// Random legal tree where every node adds one fresh requirement over its
// parent: subset chains hold by construction.
static Taxonomy random_tree(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  Taxonomy t;
  t.root = "n0000";
  TaxonomyNode root;
  root.id = t.root;
  root.display_names = {"n0000"};
  t.nodes.emplace(t.root, std::move(root));

  std::vector<std::string> ids{t.root};
  for (int i = 1; i < n; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "n%04d", i);
    std::string id = buf;
    std::string parent = ids[std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng)];
    TaxonomyNode node;
    node.id = id;
    node.display_names = {id};
    node.requirements = t.nodes.at(parent).requirements;
    node.requirements.insert("R_" + std::string(buf + 1));
    t.nodes.emplace(id, std::move(node));
    auto& children = t.nodes.at(parent).children;
    children.insert(std::upper_bound(children.begin(), children.end(), id), id);
    ids.push_back(id);
  }
  return t;
}

int main(int argc, char** argv) {
  int n = (argc > 1) ? std::atoi(argv[1]) : 800;
  unsigned seed = (argc > 2) ? static_cast<unsigned>(std::strtoul(argv[2], nullptr, 10)) : 42;
  using clock = std::chrono::steady_clock;

  Taxonomy tree = random_tree(n, seed);
  std::cout << "nodes=" << n << " seed=" << seed << "\n";

  auto t0 = clock::now();
  DistanceMatrix serial = reqtax::distance_matrix_serial(tree, reqtax::Selection::all);
  auto t1 = clock::now();
  DistanceMatrix parallel = reqtax::distance_matrix(tree, reqtax::Selection::all);
  auto t2 = clock::now();

  if (!(serial == parallel)) {
    std::cerr << "MISMATCH between serial and parallel results\n";
    return 1;
  }
  auto ms = [](auto a, auto b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };
  double ts = ms(t0, t1), tp = ms(t1, t2);
  std::cout << "serial   " << ts << " ms\n";
  std::cout << "parallel " << tp << " ms\n";
  std::cout << "speedup  " << (tp > 0 ? ts / tp : 0.0) << "x\n";
  return 0;
}
