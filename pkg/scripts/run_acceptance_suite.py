"""
Acceptance Suite - 예제 설정 전체 실행과 판정 점검

사용법: python -m scripts.run_acceptance_suite [출력 디렉터리]
"""

import filecmp
import logging
import math
import sys
from pathlib import Path

logging.basicConfig(level=logging.INFO, format="%(levelname)s - %(message)s")
logger = logging.getLogger(__name__)

from src.application.common.exceptions import ApplicationError
from src.application.domain.experiment.config_loader import load_experiment_config
from src.application.domain.experiment.service import ExperimentService
from src.application.domain.experiment.verdict import parse_verdict

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"
LOG_CAT = math.log((3.0 + math.sqrt(5.0)) / 2.0)

# 설정 파일 -> [(키, 판정 함수, 설명)]
CHECKS = {
    "circle_linear.yaml": [
        ("CONSTANT_DATA", lambda v: v == "yes", "constant periodic data"),
        ("LOG_D_GAP", lambda v: float(v) < 1e-10, "mean exponent = log 2"),
        ("REGULARITY_ALPHA", lambda v: abs(float(v) - 1.0) < 1e-6, "alpha = 1"),
    ],
    "circle_conjugated.yaml": [
        ("CONSTANT_DATA", lambda v: v == "yes", "constant periodic data"),
        ("LOG_D_GAP", lambda v: float(v) < 1e-6, "mean exponent = log 2"),
        ("REGULARITY_ALPHA", lambda v: float(v) >= 0.95, "alpha >= 0.95"),
        ("BILIPSCHITZ", lambda v: v == "yes", "bi-Lipschitz certified"),
    ],
    "circle_perturbed.yaml": [
        ("CONSTANT_DATA", lambda v: v == "no", "non-constant periodic data"),
        ("REGULARITY_ALPHA", lambda v: float(v) < 0.95, "alpha < 0.95"),
        ("BILIPSCHITZ", lambda v: v == "no", "not bi-Lipschitz"),
        ("ACIM_BIRKHOFF_GAP", lambda v: float(v) < 1e-2, "ACIM exponent = Birkhoff"),
    ],
    "torus_cat.yaml": [
        ("CONSTANT_DATA", lambda v: v == "yes", "constant periodic data"),
        ("LINEAR_MATCH_U1", lambda v: v == "yes", "unstable exponent = linear"),
        ("ENTROPY_RUELLE_GAP", lambda v: abs(float(v)) < 1e-3, "Ruelle gap = 0"),
        ("ENTROPY_CHI_SEGMENT", lambda v: abs(float(v) - LOG_CAT) < 1e-3, "segment growth"),
    ],
    "torus_conjugated.yaml": [
        ("CONSTANT_DATA", lambda v: v == "yes", "constant periodic data"),
        ("CONSERVATIVE", lambda v: v == "yes", "conservative"),
        ("FRANKS_RESIDUAL_OK", lambda v: v == "yes", "Franks residual within tolerance"),
        ("FRANKS_RESIDUAL", lambda v: float(v) <= 1e-4, "Franks residual <= 1e-4"),
        ("FRANKS_DISTANCE", lambda v: float(v) <= 1e-3, "Franks field = H^-1 - id"),
        ("ENTROPY_RUELLE_GAP", lambda v: abs(float(v)) < 5e-3, "Ruelle gap = 0"),
        ("UNIFORM_DEVIATION_1", lambda v: float(v) < 5e-3, "uniform convergence"),
    ],
    "torus_generic.yaml": [
        ("CONSTANT_DATA", lambda v: v == "no", "non-constant periodic data"),
        ("CONSERVATIVE", lambda v: v == "no", "dissipative"),
        ("FRANKS_DISTANCE", lambda v: v == "SKIPPED", "no closed-form conjugacy"),
    ],
    "torus_3d.yaml": [
        ("ENTROPY_CHI_FLAG_2", lambda v: v != "SKIPPED", "full flag growth"),
    ],
}

# 설정 파일 -> [(판정 블록 전체에 대한 함수, 설명)]
RELATION_CHECKS = {
    "torus_generic.yaml": [
        (
            lambda verdict: min(
                float(verdict["REGULARITY_ALPHA_STABLE"]),
                float(verdict["REGULARITY_ALPHA_UNSTABLE"]),
            )
            < 0.98,
            "min directional alpha < 1",
        ),
        (
            lambda verdict: float(verdict["UNIFORM_DEVIATION_1"])
            >= float(verdict["UNIFORM_HALF_SPREAD_1"]) - 1e-9,
            "uniform deviation plateaus above periodic spread/2",
        ),
    ],
}


def run_config(name: str, out: Path, threads: int | None = None) -> dict[str, str]:
    config = load_experiment_config(CONFIG_DIR / name)
    verdict = ExperimentService(config, out, threads=threads).run()
    return parse_verdict(verdict)


def same_tree(first: Path, second: Path) -> bool:
    comparison = filecmp.dircmp(first, second)
    if comparison.left_only or comparison.right_only:
        return False
    _, mismatch, errors = filecmp.cmpfiles(first, second, comparison.common_files, shallow=False)
    return not mismatch and not errors


def main() -> int:
    root = Path(sys.argv[1] if len(sys.argv) > 1 else "out/acceptance")
    print("=" * 80)
    print("Rigidity Lab - Acceptance Suite")
    print("=" * 80)

    failures = 0
    for name, checks in CHECKS.items():
        out = root / Path(name).stem
        try:
            verdict = run_config(name, out)
        except ApplicationError as e:
            print(f"[FAIL] {name}: {e}")
            failures += 1
            continue
        for key, check, label in checks:
            value = verdict.get(key, "SKIPPED")
            ok = check(value)
            failures += not ok
            print(f"[{'PASS' if ok else 'FAIL'}] {name}: {label} ({key}={value})")
        for relation, label in RELATION_CHECKS.get(name, []):
            try:
                ok = relation(verdict)
            except (KeyError, ValueError):
                ok = False
            failures += not ok
            print(f"[{'PASS' if ok else 'FAIL'}] {name}: {label}")

    # 같은 시드, 다른 스레드 수에서 바이트 동일성
    single = root / "determinism" / "threads1"
    multi = root / "determinism" / "threads8"
    run_config("circle_perturbed.yaml", single, threads=1)
    run_config("circle_perturbed.yaml", multi, threads=8)
    identical = same_tree(single, multi)
    failures += not identical
    print(f"[{'PASS' if identical else 'FAIL'}] determinism across thread counts")

    print("=" * 80)
    print(f"{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
