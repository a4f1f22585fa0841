#include "csr/generate.hpp"

#include <algorithm>
#include <random>

#include "csr/validate.hpp"
#include "detail/bits.hpp"

namespace csr {

namespace {

struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t next() { return eng(); }
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
    bool chance(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return static_cast<double>(next() >> 11) <
               p * static_cast<double>(std::uint64_t{1} << 53);
    }
};

std::string alphabet_label(int i) {
    if (i < 26) return std::string(1, static_cast<char>('a' + i));
    return "l" + std::to_string(i + 1);
}

std::vector<Event> fresh_events(Rng& rng, int count, int alphabet) {
    std::vector<Event> events;
    events.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        int label = static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, alphabet))));
        events.push_back({"e" + std::to_string(i + 1), alphabet_label(label)});
    }
    return events;
}

/// Random order + inherited conflicts; configurations are the conflict-free
/// left-closed subsets.
std::vector<Mask> prime_family(Rng& rng, int k, double causal_density, double conflict_density,
                               const Limits& limits) {
    std::vector<std::vector<char>> lt(static_cast<std::size_t>(k),
                                      std::vector<char>(static_cast<std::size_t>(k), 0));
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            if (rng.chance(causal_density)) lt[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
        }
    }
    for (int m = 0; m < k; ++m) {
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                if (lt[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] &&
                    lt[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)]) {
                    lt[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
                }
            }
        }
    }
    std::vector<std::vector<char>> conflict(static_cast<std::size_t>(k),
                                            std::vector<char>(static_cast<std::size_t>(k), 0));
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            bool ordered = lt[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ||
                           lt[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            if (!ordered && rng.chance(conflict_density)) {
                conflict[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
                conflict[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = 1;
            }
        }
    }
    // Conflict heredity: d # e and e <= f imply d # f.
    for (bool changed = true; changed;) {
        changed = false;
        for (int d = 0; d < k; ++d) {
            for (int e = 0; e < k; ++e) {
                if (!conflict[static_cast<std::size_t>(d)][static_cast<std::size_t>(e)]) continue;
                for (int f = 0; f < k; ++f) {
                    if (lt[static_cast<std::size_t>(e)][static_cast<std::size_t>(f)] &&
                        !conflict[static_cast<std::size_t>(d)][static_cast<std::size_t>(f)]) {
                        conflict[static_cast<std::size_t>(d)][static_cast<std::size_t>(f)] = 1;
                        conflict[static_cast<std::size_t>(f)][static_cast<std::size_t>(d)] = 1;
                        changed = true;
                    }
                }
            }
        }
    }

    std::vector<Mask> configs;
    for (Mask m = 0; m < (Mask{1} << k); ++m) {
        bool ok = true;
        detail::for_each_bit(m, [&](int e) {
            if (!ok) return;
            for (int d = 0; d < k; ++d) {
                bool in = (m >> d) & 1;
                if (lt[static_cast<std::size_t>(d)][static_cast<std::size_t>(e)] && !in) ok = false;
                if (in && conflict[static_cast<std::size_t>(d)][static_cast<std::size_t>(e)]) ok = false;
            }
        });
        if (ok) configs.push_back(m);
        if (configs.size() > static_cast<std::size_t>(limits.max_configs)) {
            throw CapacityError("generated family exceeds the configuration guard");
        }
    }
    return configs;
}

ConfigStructure generate_prime(Rng& rng, const GenParams& p, const Limits& limits) {
    int k = p.max_events == 0
                ? 0
                : 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(p.max_events)));
    std::vector<Event> events = fresh_events(rng, k, p.label_alphabet);
    std::vector<Mask> configs = prime_family(rng, k, p.causal_density, p.conflict_density, limits);
    return ConfigStructure::from_masks(std::move(events), std::move(configs));
}

ConfigStructure generate_rejection(Rng& rng, const GenParams& p, const Limits& limits) {
    int k = std::min(p.max_events, 5);
    for (int attempt = 0; attempt < p.rejection_budget; ++attempt) {
        int events = k == 0 ? 0 : 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
        std::vector<Mask> configs = {0};
        for (Mask m = 1; m < (Mask{1} << events); ++m) {
            if (rng.chance(p.causal_density)) configs.push_back(m);
        }
        Mask used = 0;
        for (Mask m : configs) used |= m;
        std::vector<Event> evs;
        std::vector<Mask> packed = configs;
        int kept = 0;
        std::vector<int> new_bit(static_cast<std::size_t>(events), -1);
        detail::for_each_bit(used, [&](int b) {
            new_bit[static_cast<std::size_t>(b)] = kept++;
        });
        evs = fresh_events(rng, kept, p.label_alphabet);
        for (Mask& m : packed) {
            Mask r = 0;
            detail::for_each_bit(m, [&](int b) { r |= detail::bit(new_bit[static_cast<std::size_t>(b)]); });
            m = r;
        }
        try {
            ConfigStructure s = ConfigStructure::from_masks(std::move(evs), std::move(packed));
            if (validate(s, limits).stable()) return s;
        } catch (const InputError&) {
            // duplicate configuration after packing; resample
        }
    }
    throw CapacityError("rejection sampling budget exhausted");
}

ConfigStructure generate_gadget(Rng& rng, const GenParams& p, const Limits& limits) {
    if (p.max_events < 3) return generate_prime(rng, p, limits);

    // Exclusive-or causation: two concurrent triggers, either one (but not
    // both) enabling the third event.
    const std::vector<Mask> gadget = {0b000, 0b001, 0b010, 0b011, 0b101, 0b110};

    GenParams rest = p;
    rest.max_events = p.max_events - 3;
    int k = rest.max_events == 0
                ? 0
                : 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(rest.max_events)));
    std::vector<Event> rest_events = fresh_events(rng, k, p.label_alphabet);
    std::vector<Mask> rest_configs = prime_family(rng, k, p.causal_density, p.conflict_density, limits);

    if (gadget.size() * rest_configs.size() > static_cast<std::size_t>(limits.max_configs)) {
        throw CapacityError("generated family exceeds the configuration guard");
    }
    std::vector<Event> events;
    for (int i = 0; i < 3; ++i) {
        int label = static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, p.label_alphabet))));
        events.push_back({"e" + std::to_string(i + 1), alphabet_label(label)});
    }
    for (int i = 0; i < k; ++i) {
        events.push_back({"e" + std::to_string(i + 4), rest_events[static_cast<std::size_t>(i)].label});
    }
    std::vector<Mask> configs;
    configs.reserve(gadget.size() * rest_configs.size());
    for (Mask g : gadget) {
        for (Mask r : rest_configs) configs.push_back(g | (r << 3));
    }
    return ConfigStructure::from_masks(std::move(events), std::move(configs));
}

}  // namespace

ConfigStructure generate(const GenParams& params, const Limits& limits) {
    if (params.max_events < 0) throw InputError("max_events must be non-negative");
    if (params.max_events > limits.max_events) {
        throw CapacityError("requested size exceeds the event guard");
    }
    Rng rng(mix_seed(params.seed, static_cast<std::uint64_t>(params.mode) + 1));
    switch (params.mode) {
        case GenMode::PrimeES: return generate_prime(rng, params, limits);
        case GenMode::Rejection: return generate_rejection(rng, params, limits);
        case GenMode::Gadget: return generate_gadget(rng, params, limits);
    }
    throw InputError("unknown generation mode");
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace csr
