#include "trackrepair/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace trackrepair {

namespace {

// Renormalizes to sum 1, redrawing on an (almost impossible) all-zero vector.
void renormalize(WeightVector& w, Rng& rng) {
    for (;;) {
        const double total = w.sum();
        if (total > 0.0) {
            for (auto& value : w.values) {
                value /= total;
            }
            return;
        }
        for (auto& value : w.values) {
            value = rng.uniform01();
        }
    }
}

Individual randomIndividual(Rng& rng) {
    Individual individual;
    for (auto& value : individual.weights.values) {
        value = rng.uniform01();
    }
    renormalize(individual.weights, rng);
    return individual;
}

}  // namespace

void GaConfig::validate() const {
    if (populationSize < 2) {
        throw ValidationError("GA population size must be at least 2");
    }
    if (mutationProb < 0.0 || mutationProb > 1.0 || crossoverProb < 0.0 || crossoverProb > 1.0) {
        throw ValidationError("GA probabilities must lie in [0,1]");
    }
    if (eliteCount < 1 || eliteCount > populationSize) {
        throw ValidationError("GA elite count must lie in [1, population size]");
    }
    if (maxGenerations < 0) {
        throw ValidationError("GA generation limit must be non-negative");
    }
}

double fitness(const WeightVector& w, const TrainingSet& train) {
    double total = 0.0;
    for (const auto& entry : train) {
        total += std::abs(entry.groundTruth - confidenceValue(entry.features, w));
    }
    return total;
}

Individual mutate(const Individual& individual, Rng& rng) {
    Individual child;
    child.weights = individual.weights;
    const auto position = static_cast<std::size_t>(rng.uniformIndex(9));
    for (std::size_t i = position; i < 9; ++i) {
        child.weights.values[i] = rng.uniform01();
    }
    renormalize(child.weights, rng);
    return child;
}

std::pair<Individual, Individual> crossover(const Individual& a, const Individual& b, Rng& rng) {
    Individual childA;
    Individual childB;
    childA.weights = a.weights;
    childB.weights = b.weights;
    const auto position = static_cast<std::size_t>(rng.uniformIndex(9));
    for (std::size_t i = position; i < 9; ++i) {
        std::swap(childA.weights.values[i], childB.weights.values[i]);
    }
    renormalize(childA.weights, rng);
    renormalize(childB.weights, rng);
    return {childA, childB};
}

EvolveResult evolve(const TrainingSet& train, const GaConfig& cfg) {
    cfg.validate();
    if (train.empty()) {
        throw ValidationError("GA training set is empty");
    }
    const double threshold = cfg.fitnessThreshold >= 0.0
                                 ? cfg.fitnessThreshold
                                 : 0.05 * static_cast<double>(train.size());
    Rng rng(cfg.rngSeed);

    std::vector<Individual> population;
    population.reserve(static_cast<std::size_t>(cfg.populationSize));
    for (int i = 0; i < cfg.populationSize; ++i) {
        population.push_back(randomIndividual(rng));
    }

    const auto evaluate = [&train](std::vector<Individual>& individuals) {
        for (auto& individual : individuals) {
            if (!individual.evaluated()) {
                individual.fitness = fitness(individual.weights, train);
            }
        }
    };
    // Stable sort keeps ties in creation order, so runs are reproducible.
    const auto sortByFitness = [](std::vector<Individual>& individuals) {
        std::stable_sort(individuals.begin(), individuals.end(),
                         [](const Individual& a, const Individual& b) {
                             return a.fitness < b.fitness;
                         });
    };

    EvolveResult result;
    evaluate(population);
    sortByFitness(population);
    result.best = population.front().weights;
    result.bestFitness = population.front().fitness;
    result.history.push_back(result.bestFitness);

    std::vector<std::size_t> pairing;
    while (result.bestFitness >= threshold && result.generations < cfg.maxGenerations) {
        std::vector<Individual> next;
        next.reserve(population.size());
        const auto eliteCount =
            std::min<std::size_t>(static_cast<std::size_t>(cfg.eliteCount), population.size());
        for (std::size_t i = 0; i < eliteCount; ++i) {
            next.push_back(population[i]);
        }

        // Parents come from the top half, paired without replacement; the
        // pairing is reshuffled once a pass over the pool is exhausted.
        const std::size_t poolSize = std::max<std::size_t>(2, population.size() / 2);
        std::size_t pairingPos = pairing.size();  // force an initial shuffle
        while (next.size() < population.size()) {
            if (pairingPos + 1 >= pairing.size()) {
                pairing.resize(poolSize);
                std::iota(pairing.begin(), pairing.end(), std::size_t{0});
                for (std::size_t i = poolSize - 1; i > 0; --i) {
                    std::swap(pairing[i], pairing[rng.uniformIndex(i + 1)]);
                }
                pairingPos = 0;
            }
            const Individual& parentA = population[pairing[pairingPos]];
            const Individual& parentB = population[pairing[pairingPos + 1]];
            pairingPos += 2;

            Individual childA = parentA;
            Individual childB = parentB;
            if (rng.bernoulli(cfg.crossoverProb)) {
                std::tie(childA, childB) = crossover(parentA, parentB, rng);
            }
            if (rng.bernoulli(cfg.mutationProb)) {
                childA = mutate(childA, rng);
            }
            if (rng.bernoulli(cfg.mutationProb)) {
                childB = mutate(childB, rng);
            }
            next.push_back(std::move(childA));
            if (next.size() < population.size()) {
                next.push_back(std::move(childB));
            }
        }

        evaluate(next);
        sortByFitness(next);
        population.swap(next);
        ++result.generations;
        const auto& generationBest = population.front();
        result.history.push_back(generationBest.fitness);
        if (generationBest.fitness < result.bestFitness) {
            result.bestFitness = generationBest.fitness;
            result.best = generationBest.weights;
        }
    }

    result.converged = result.bestFitness < threshold;
    return result;
}

}  // namespace trackrepair
