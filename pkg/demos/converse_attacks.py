"""
Why rates above capacity fail
=============================

Two attacks force ambiguity: the received word is within the jammer's
budget of two different codewords, so no decoder can tell which was sent.
The exhaustive oracle over a small Reed-Solomon code certifies this per trial.
"""

from causalcodes.harness import ExperimentConfig, run_experiment

runs = {
    "p = 1/2, copy half of a random codeword": dict(
        n=8, p=0.5, d=0.125, rate=0.25, attack={"kind": "halves_attack"}),
    "d < p < 1/2, wait then attack (rate 1-2p+d+1/n)": dict(
        n=8, p=0.375, d=0.125, eps=0.125, attack={"kind": "wait_and_attack"}),
    "no delay, wait then attack (rate 1-2p+1/n)": dict(
        n=8, p=0.375, d=0.0, eps=0.125, attack={"kind": "wait_and_attack"}),
}
for name, kw in runs.items():
    cfg = ExperimentConfig.from_dict(dict(q=17, codec="baseline_rs", trials=500, seed=3, **kw))
    report = run_experiment(cfg)
    print(f"{name}: ambiguous in {report.ambiguity_rate:.1%} of trials "
          f"(nearest-codeword decoder wrong or failing in {report.error_rate:.1%})")
