#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <span>
#include <string_view>
#include <vector>

#include "rbn/genome.hpp"
#include "rbn/rng.hpp"

namespace rbn {

struct GenomeParams {
  int node_count = 25;
  int arity = 2;
  Topology topology = Topology::grid(5, 5);
  FunctionSet function_set = FunctionSet::Gates;
  DynamismMode mode = DynamismMode::Structural;
};

// Uniform functions, wiring, shifts and refunc bits; every flag false.
NetworkGenome random_genome(const GenomeParams& params, Rng& rng);

enum class MutationKind {
  Function,
  Connection,
  ToggleStructural,
  ToggleFunctional,
  RewireEntry,
  RefuncEntry,
  StructuralControl,
  FunctionalControl,
};

std::string_view to_string(MutationKind kind);

// Categories drawn with equal probability in the given mode.
std::span<const MutationKind> mutation_kinds(DynamismMode mode);

struct MutationReport {
  MutationKind kind = MutationKind::Function;
  bool applied = false;  // false when the draw had no eligible node
  NodeId node = 0;
};

// Exactly one mutation event. Entry and control categories act on nodes that
// carry the matching flag; with none available the offspring is a clone.
NetworkGenome mutate(const NetworkGenome& parent, Rng& rng, MutationReport* report = nullptr);

struct EvalRecord {
  double fitness = 0.0;
  int dynamic_count = 0;
};

enum class Winner { Candidate, Incumbent };

struct Decision {
  Winner winner;
  bool coin = false;  // decided by the fair coin after a full tie
};

// Higher fitness wins; on a fitness tie fewer dynamic flags win; a full tie
// is settled by a coin.
Decision prefer(const EvalRecord& candidate, const EvalRecord& incumbent, Rng& rng);

// Shortest round-trippable text for the integral and simple fractional
// scores the tasks produce.
std::string format_fitness(double fitness);

struct GenerationRecord {
  std::size_t generation = 0;
  double fitness = 0.0;  // incumbent after this generation
  int dynamic_count = 0;
  bool accepted = false;
  bool coin = false;
  double offspring_fitness = 0.0;
  int offspring_dynamic_count = 0;
};

struct ClimbHistory {
  std::vector<GenerationRecord> records;  // records[0] is the initial genome
  NetworkGenome best;
  EvalRecord best_eval;

  // generation,fitness,dynamic_count,accepted
  void write_csv(std::ostream& out) const;
};

using Evaluator = std::function<double(const NetworkGenome&)>;

// (1+1) hill climb from a random genome: generations + 1 evaluator calls, or
// fewer when the incumbent reaches `stop_at`.
ClimbHistory hill_climb(const Evaluator& evaluate, const GenomeParams& params, std::size_t generations,
                        Rng& rng, std::optional<double> stop_at = std::nullopt);

}  // namespace rbn
