import math


def utility_value(stage_index, iteration, best_f, mu, sigma):
    utilities = []
    for m, s in zip(mu, sigma):
        if s <= 0.0:
            utilities.append(max(best_f - m, 0.0))
            continue
        z = (best_f - m) / s
        cdf = 0.5 * math.erfc(-z / math.sqrt(2.0))
        pdf = math.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)
        utilities.append((best_f - m) * cdf + s * pdf)
    return utilities
