#ifndef SWIRL_PSO_HPP
#define SWIRL_PSO_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "swirl/errors.hpp"
#include "swirl/index.hpp"
#include "swirl/rng.hpp"
#include "swirl/similarity.hpp"

namespace swirl {

/// fitness of a document id under the active query
using fitness_fn = std::function<double(int)>;

struct pso_config {
    int num_particles = 20;
    int num_iterations = 50;
    double inertia = 0.7;            // insf
    std::uint64_t rng_seed = 1;
    int shard_count = 0;             // 0: one shard per particle

    void validate() const {
        if (num_particles < 1) throw config_error("pso: num_particles must be >= 1");
        if (num_iterations < 0) throw config_error("pso: num_iterations must be >= 0");
        if (!(inertia > 0.0)) throw config_error("pso: inertia must be > 0");
        if (shard_count < 0) throw config_error("pso: shard_count must be >= 0");
    }
};

/// One searcher: position is a document id, velocity a signed step through
/// the id space.
struct particle {
    int position = 1;
    double velocity = 0.0;
    int best_position = 1;       // part_bc
    double best_fitness = 0.0;
};

struct doc_shard {
    int first = 1;               // inclusive doc id range
    int last = 1;
    int max_terms = 0;           // max distinct-term count over the range
};

/// Contiguous partition of the id space plus the pairwise-minimum cluster
/// values derived from per-shard term maxima. Initialization draws start
/// positions from the shards; the cluster values are reported alongside.
struct shard_plan {
    std::vector<doc_shard> shards;
    std::vector<int> clusters;

    int num_docs() const { return shards.empty() ? 0 : shards.back().last; }
};

/// Splits 1..N into shard_count contiguous ranges of equal size (+-1),
/// records each range's maximum distinct-term count, and forms clusters:
/// cluster[h] = min(max_terms[h], max_terms[h+1]), last cluster = last max.
inline shard_plan plan_shards(const inverted_index& idx, int shard_count) {
    const int n = static_cast<int>(idx.num_docs());
    if (shard_count < 1) throw config_error("plan_shards: shard_count must be >= 1");
    if (shard_count > n)
        throw config_error("plan_shards: shard_count " + std::to_string(shard_count) +
                           " exceeds corpus size " + std::to_string(n));
    shard_plan plan;
    plan.shards.reserve(shard_count);
    const int base = n / shard_count;
    const int extra = n % shard_count;
    int next = 1;
    for (int s = 0; s < shard_count; ++s) {
        doc_shard shard;
        shard.first = next;
        shard.last = next + base - 1 + (s < extra ? 1 : 0);
        next = shard.last + 1;
        shard.max_terms = 0;
        for (int doc = shard.first; doc <= shard.last; ++doc)
            shard.max_terms = std::max(shard.max_terms, idx.max_terms(doc));
        plan.shards.push_back(shard);
    }
    plan.clusters.reserve(shard_count);
    for (int h = 0; h + 1 < shard_count; ++h)
        plan.clusters.push_back(std::min(plan.shards[h].max_terms, plan.shards[h + 1].max_terms));
    plan.clusters.push_back(plan.shards.back().max_terms);
    return plan;
}

struct swarm_state {
    std::vector<particle> particles;
    int global_best = 0;                 // bss
    double global_best_fitness = 0.0;
    std::map<int, double> evaluated;     // every position ever scored
    std::uint64_t fitness_calls = 0;
    int iteration = 0;
    int num_docs = 0;
    rng random{0};

    /// memoized fitness lookup; every new position lands in `evaluated`
    double fitness_at(const fitness_fn& fitness, int position) {
        const auto it = evaluated.find(position);
        if (it != evaluated.end()) return it->second;
        const double value = fitness(position);
        evaluated.emplace(position, value);
        ++fitness_calls;
        return value;
    }
};

/// Particle j starts at a seeded-random position inside shard j mod S with
/// zero velocity; personal bests are the start positions and the global
/// best is the fittest start (ties to the lowest doc id).
inline swarm_state init_swarm(const shard_plan& plan, const pso_config& cfg,
                              const fitness_fn& fitness) {
    cfg.validate();
    if (plan.shards.empty()) throw contract_error("init_swarm: empty shard plan");
    swarm_state state;
    state.num_docs = plan.num_docs();
    state.random = rng(cfg.rng_seed);
    state.particles.reserve(cfg.num_particles);
    const int shard_count = static_cast<int>(plan.shards.size());
    for (int j = 0; j < cfg.num_particles; ++j) {
        const doc_shard& home = plan.shards[j % shard_count];
        particle p;
        p.position = state.random.uniform_int(home.first, home.last);
        p.velocity = 0.0;
        p.best_position = p.position;
        p.best_fitness = state.fitness_at(fitness, p.position);
        state.particles.push_back(p);
    }
    state.global_best = state.particles.front().best_position;
    state.global_best_fitness = state.particles.front().best_fitness;
    for (const particle& p : state.particles) {
        if (p.best_fitness > state.global_best_fitness ||
            (p.best_fitness == state.global_best_fitness && p.best_position < state.global_best)) {
            state.global_best = p.best_position;
            state.global_best_fitness = p.best_fitness;
        }
    }
    return state;
}

namespace detail {

// velocity/position update for one particle:
//   vel' = insf*vel + randpart*(pbest - pos) + randglob*(gbest - pos)
//   pos' = ((pos + round(vel')) mod N) + 1
// velocity stays fractional between steps; rounding is half away from zero
struct particle_move {
    double velocity = 0.0;
    int position = 1;
};

inline particle_move update_particle(const particle& p, int global_best, double inertia,
                                     double rand_part, double rand_glob, int num_docs) {
    particle_move move;
    move.velocity = inertia * p.velocity +
                    rand_part * static_cast<double>(p.best_position - p.position) +
                    rand_glob * static_cast<double>(global_best - p.position);
    const long long step = std::llround(move.velocity);
    const long long n = num_docs;
    long long wrapped = (static_cast<long long>(p.position) + step) % n;
    if (wrapped < 0) wrapped += n;
    move.position = static_cast<int>(wrapped) + 1;
    return move;
}

} // namespace detail

/// One swarm iteration: every particle draws its confidence coefficients
/// from (0, insf+1), moves, and updates its personal best on strict
/// improvement; the global best is refreshed after all particles moved.
inline void step(swarm_state& state, const pso_config& cfg, const fitness_fn& fitness) {
    const int bss = state.global_best;
    for (particle& p : state.particles) {
        const double rand_part = state.random.open_uniform(0.0, cfg.inertia + 1.0);
        const double rand_glob = state.random.open_uniform(0.0, cfg.inertia + 1.0);
        const auto move = detail::update_particle(p, bss, cfg.inertia, rand_part, rand_glob,
                                                  state.num_docs);
        p.velocity = move.velocity;
        p.position = move.position;
        const double value = state.fitness_at(fitness, p.position);
        if (value > p.best_fitness) {
            p.best_fitness = value;
            p.best_position = p.position;
        }
    }
    const particle* candidate = nullptr;
    for (const particle& p : state.particles)
        if (candidate == nullptr || p.best_fitness > candidate->best_fitness ||
            (p.best_fitness == candidate->best_fitness &&
             p.best_position < candidate->best_position))
            candidate = &p;
    if (candidate != nullptr && candidate->best_fitness > state.global_best_fitness) {
        state.global_best = candidate->best_position;
        state.global_best_fitness = candidate->best_fitness;
    }
    ++state.iteration;
}

struct pso_result {
    std::vector<ranked_hit> ranking;     // top-k of every evaluated position
    bool oov = false;
    std::uint64_t fitness_evaluations = 0;
    std::uint64_t positions_evaluated = 0;
    int iterations_run = 0;
    int global_best = 0;
    double global_best_fitness = 0.0;
};

/// Swarm-accelerated retrieval: initializes from the shard plan, runs the
/// configured iterations and ranks every evaluated position. At most
/// num_particles * (num_iterations + 1) fitness evaluations are spent;
/// results are deterministic for a given seed.
inline pso_result pso_search(const weighted_query& query, const inverted_index& idx,
                             similarity_measure measure, const pso_config& cfg, std::size_t k) {
    cfg.validate();
    if (k < 1) throw contract_error("pso_search: cutoff k must be >= 1");
    pso_result result;
    if (query.empty()) {
        result.oov = true;
        return result;
    }
    const fitness_fn fitness = [&](int doc_id) { return score(measure, query, doc_id, idx); };
    const int n = static_cast<int>(idx.num_docs());
    const int wanted = cfg.shard_count > 0 ? cfg.shard_count : cfg.num_particles;
    const shard_plan plan = plan_shards(idx, std::min(wanted, n));
    swarm_state state = init_swarm(plan, cfg, fitness);
    for (int it = 0; it < cfg.num_iterations; ++it) step(state, cfg, fitness);

    result.ranking.reserve(state.evaluated.size());
    for (const auto& [doc_id, value] : state.evaluated) result.ranking.push_back({doc_id, value});
    sort_ranking(result.ranking);
    if (result.ranking.size() > k) result.ranking.resize(k);
    result.fitness_evaluations = state.fitness_calls;
    result.positions_evaluated = state.evaluated.size();
    result.iterations_run = state.iteration;
    result.global_best = state.global_best;
    result.global_best_fitness = state.global_best_fitness;
    return result;
}

} // namespace swirl

#endif // SWIRL_PSO_HPP
