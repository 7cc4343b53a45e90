#!/usr/bin/env python3
"""Regenerate the scripted LLM transcripts used by `evostage replay`.

Two fixture trees are produced:

  fixtures/replay_gp  -- a full schedule-domain evolution (gp profile:
                         5 generations x 5 offspring = 25 reproductions,
                         4 stages, components learning_rate + steps)
  fixtures/replay_bo  -- a full BO-domain evolution (bo profile:
                         3 generations x 3 offspring = 9 reproductions,
                         3 stages, component acquisition)

Every reproduction index r maps to one operator (r % 3):
  0 -> stagewise_design   coordinator goal + one coder reply per stage
  1 -> global_explore     one multi-block coder reply (one block per stage)
  2 -> global_enhance     same shape as global_explore

File layout mirrors the mock provider's lookup:
  <role_id>/<template_id>/g<reproduction>_s<stage>_a<attempt>.txt

All candidates are legal and hit their targets, so a replay finishes with
pass rate 1.0 and a deterministic report. The BO tree's first stagewise
design is the staged acquisition mix: pure sigma in stage 0, then
0.4 * EI + 0.6 * UCB afterwards.
"""

from __future__ import annotations

import pathlib
import shutil

ROOT = pathlib.Path(__file__).resolve().parents[2]

# ---------------------------------------------------------------------------
# Candidate sources.

LR_SOURCE = """\
def adjust_learning_rate(init_learning_rate, step_num, log_objective, log_objective_prev,
                         overflow, log_lambda, learning_rate_prev, log_gradient_norm):
    # {note}
    return init_learning_rate
"""

STEPS_SOURCE = """\
def num_steps(subproblem_index, overflow, log_lambda):
    # {note}
    return 80
"""

SIGMA_SOURCE = """\
def utility_value(stage_index, iteration, best_f, mu, sigma):
    # {note}
    return list(sigma)
"""

MIX_SOURCE = """\
import math


def utility_value(stage_index, iteration, best_f, mu, sigma):
    # {note}
    out = []
    for m, s in zip(mu, sigma):
        if s > 0.0:
            z = (best_f - m) / s
            cdf = 0.5 * math.erfc(-z / math.sqrt(2.0))
            pdf = math.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)
            ei = (best_f - m) * cdf + s * pdf
        else:
            ei = max(best_f - m, 0.0)
        out.append(0.4 * ei + 0.6 * (-m + 2.0 * s))
    return out
"""

EI_SOURCE = """\
import math


def utility_value(stage_index, iteration, best_f, mu, sigma):
    # {note}
    out = []
    for m, s in zip(mu, sigma):
        if s > 0.0:
            z = (best_f - m) / s
            cdf = 0.5 * math.erfc(-z / math.sqrt(2.0))
            pdf = math.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)
            out.append((best_f - m) * cdf + s * pdf)
        else:
            out.append(max(best_f - m, 0.0))
    return out
"""


def fenced(source: str) -> str:
    return "```python\n" + source + "```"


def write(path: pathlib.Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


# ---------------------------------------------------------------------------
# Schedule-domain tree (gp profile).


def gen_gp(base: pathlib.Path) -> None:
    stages = 4
    goals = [
        "spread the cells aggressively while the density weight is still small",
        "keep the step size steady as the penalty ramp engages",
        "hold the proven constant rate; the overflow curve is already falling",
        "finish with the same stable schedule until the overflow target is met",
    ]
    for r in range(25):
        op = r % 3
        if op == 0:  # stagewise_design
            for s in range(stages):
                write(
                    base / "coordinator" / "coordinator" / f"g{r}_s{s}_a0.txt",
                    "The intermediate metrics look healthy; no correction is needed.\n"
                    f"GOAL: {goals[s]}\n",
                )
                write(
                    base / "coder_learning_rate" / "coder_stage" / f"g{r}_s{s}_a0.txt",
                    "A constant rate keeps the trajectory smooth.\n\n"
                    + fenced(LR_SOURCE.format(note=f"design {r}, stage {s}: constant rate"))
                    + "\n",
                )
                write(
                    base / "coder_steps" / "coder_stage" / f"g{r}_s{s}_a0.txt",
                    "Eighty steps per subproblem converges reliably here.\n\n"
                    + fenced(STEPS_SOURCE.format(note=f"design {r}, stage {s}: fixed budget"))
                    + "\n",
                )
        else:
            template = "global_explore" if op == 1 else "global_enhance"
            lr_blocks = "\n\n".join(
                fenced(LR_SOURCE.format(note=f"design {r} ({template}), stage {s}"))
                for s in range(stages)
            )
            steps_blocks = "\n\n".join(
                fenced(STEPS_SOURCE.format(note=f"design {r} ({template}), stage {s}"))
                for s in range(stages)
            )
            write(base / "coder_learning_rate" / template / f"g{r}_s0_a0.txt", lr_blocks + "\n")
            write(base / "coder_steps" / template / f"g{r}_s0_a0.txt", steps_blocks + "\n")


# ---------------------------------------------------------------------------
# BO tree (bo profile).


def bo_stage_source(r: int, s: int) -> str:
    if r == 0:
        # Staged acquisition: explore by posterior spread first, then blend
        # expected improvement with an upper confidence bound.
        if s == 0:
            return SIGMA_SOURCE.format(note="design 0, stage 0: pure exploration")
        return MIX_SOURCE.format(note=f"design 0, stage {s}: 0.4*EI + 0.6*UCB blend")
    if r % 2 == 0:
        return MIX_SOURCE.format(note=f"design {r}, stage {s}: EI/UCB blend")
    return EI_SOURCE.format(note=f"design {r}, stage {s}: expected improvement")


def gen_bo(base: pathlib.Path) -> None:
    stages = 3
    goals = [
        "favor high-variance points to map the landscape",
        "shift toward exploitation as the posterior tightens",
        "spend the remaining budget refining the incumbent basin",
    ]
    for r in range(9):
        op = r % 3
        if op == 0:  # stagewise_design
            for s in range(stages):
                write(
                    base / "coordinator" / "coordinator" / f"g{r}_s{s}_a0.txt",
                    "The gap is shrinking on schedule.\n"
                    f"GOAL: {goals[s]}\n",
                )
                write(
                    base / "coder_acquisition" / "coder_stage" / f"g{r}_s{s}_a0.txt",
                    "Thought: balance exploration against the incumbent.\n\n"
                    + fenced(bo_stage_source(r, s))
                    + "\n",
                )
        else:
            template = "global_explore" if op == 1 else "global_enhance"
            blocks = "\n\n".join(fenced(bo_stage_source(r, s)) for s in range(stages))
            write(base / "coder_acquisition" / template / f"g{r}_s0_a0.txt", blocks + "\n")


def main() -> None:
    for name, gen in (("replay_gp", gen_gp), ("replay_bo", gen_bo)):
        tree = ROOT / "fixtures" / name
        if tree.exists():
            shutil.rmtree(tree)
        gen(tree)
        count = sum(1 for _ in tree.rglob("*.txt"))
        print(f"{tree.relative_to(ROOT)}: {count} transcripts")


if __name__ == "__main__":
    main()
