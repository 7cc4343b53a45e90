import math


def _ei(best_f, m, s):
    if s <= 0.0:
        return max(best_f - m, 0.0)
    z = (best_f - m) / s
    cdf = 0.5 * math.erfc(-z / math.sqrt(2.0))
    pdf = math.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)
    return (best_f - m) * cdf + s * pdf


def _ucb(m, s):
    return -m + 2.0 * s


def utility_value(stage_index, iteration, best_f, mu, sigma):
    # Stage 0 explores by pure posterior spread; later stages blend
    # improvement and confidence-bound utilities.
    if stage_index == 0:
        return list(sigma)
    return [0.4 * _ei(best_f, m, s) + 0.6 * _ucb(m, s) for m, s in zip(mu, sigma)]
