#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "trackrepair/confidence.hpp"
#include "trackrepair/rng.hpp"

namespace trackrepair {

// One candidate weight set. fitness < 0 means not evaluated yet.
struct Individual {
    WeightVector weights;
    double fitness = -1.0;

    bool evaluated() const { return fitness >= 0.0; }
};

struct TrainingEntry {
    FeatureVector features;
    double groundTruth = 0.0;  // in [0,1]
};

using TrainingSet = std::vector<TrainingEntry>;

struct GaConfig {
    int populationSize = 5000;
    double mutationProb = 0.30;
    double crossoverProb = 0.80;
    // Stop once the best fitness drops below this; < 0 defaults to
    // 0.05 * |training set| (mean absolute error of 0.05).
    double fitnessThreshold = -1.0;
    int maxGenerations = 200;
    int eliteCount = 50;
    std::uint64_t rngSeed = 1;

    void validate() const;
};

struct EvolveResult {
    WeightVector best;
    double bestFitness = 0.0;
    bool converged = false;
    int generations = 0;
    // Best fitness of each generation's population, including the initial one.
    std::vector<double> history;
};

// Sum of absolute errors between ground truth and the confidence value under w.
double fitness(const WeightVector& w, const TrainingSet& train);

// Replaces the weights from a uniformly drawn position to the end with fresh
// uniform(0,1) draws, then renormalizes the whole vector to sum 1.
Individual mutate(const Individual& individual, Rng& rng);

// Swaps the suffixes of both parents from a uniformly drawn position, then
// renormalizes both children.
std::pair<Individual, Individual> crossover(const Individual& a, const Individual& b, Rng& rng);

// Elitist generational GA: random simplex initialization, crossover among the
// top half, per-individual mutation, stop on threshold or generation limit.
// Deterministic for a fixed seed.
EvolveResult evolve(const TrainingSet& train, const GaConfig& cfg);

}  // namespace trackrepair
