# -*- coding: utf-8 -*-
"""
Circle Report Service - 원 사상 실험 파이프라인

주기 데이터, 불변 밀도, 켤레 정칙성, 엔트로피 비교를 순서대로 실행하고
CSV / 평문 아티팩트와 판정 값을 만든다.
"""

import logging
import math
from pathlib import Path

import numpy as np
import pandas as pd

from src.application.common.decorators import log_execution
from src.application.common.formatters import (
    format_flag,
    format_float,
    write_columns,
    write_csv,
)
from src.application.common.parallel import ParallelExecutor
from src.application.domain.circle.conjugacy import (
    bilipschitz_report,
    conjugacy_residual,
    holder_exponent,
    ode_conjugacy,
    regularity_table,
    sup_distance,
    symbolic_conjugacy,
)
from src.application.domain.circle.dto import DensityApprox, PeriodicOrbit
from src.application.domain.circle.dynamics import (
    CircleMap,
    check_expanding,
    distortion_constant,
)
from src.application.domain.circle.periodic import (
    constant_data_statistic,
    injectivity_partition,
    interval_multipliers,
    periodic_points,
    periodic_points_up_to,
    interval_inequality_report,
)
from src.application.domain.circle.transfer_operator import (
    acim_exponent,
    birkhoff_exponent,
    invariant_density,
    periodic_vs_birkhoff,
    pushforward_defect,
)
from src.application.domain.experiment.dto import NumericsSection

logger = logging.getLogger(__name__)

PARTITION_LEVEL_CAP = 12


def orbits_frame(orbits: list[PeriodicOrbit]) -> pd.DataFrame:
    """주기점 표 (period, point, multiplier, exponent)"""
    return pd.DataFrame(
        {
            "period": [o.period for o in orbits],
            "point": [o.point for o in orbits],
            "multiplier": [o.multiplier for o in orbits],
            "exponent": [o.exponent for o in orbits],
        }
    )


class CircleReportService:
    """원 사상 실험 서비스"""

    def __init__(
        self,
        circle_map: CircleMap,
        numerics: NumericsSection,
        output_dir: Path,
        seed: int = 42,
        executor: ParallelExecutor | None = None,
    ):
        """
        Args:
            circle_map: 확장 원 사상
            numerics: 수치 조절값
            output_dir: 아티팩트 디렉터리
            seed: 난수 시드 (파이프라인별 독립 스트림으로 분기)
            executor: 병렬 실행기
        """
        self.circle_map = circle_map
        self.numerics = numerics
        self.output_dir = output_dir
        self.seed = seed
        self.executor = executor or ParallelExecutor()
        self._orbits: list[PeriodicOrbit] | None = None
        self._density: DensityApprox | None = None

    def _rng(self, stream: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, stream])

    # ==================== 파이프라인 ====================

    @log_execution
    def run(self, pipeline: str) -> dict[str, str]:
        """
        파이프라인 실행

        Args:
            pipeline: periodic / density / conjugacy / entropy / full-report

        Returns:
            dict[str, str]: 판정 키와 포맷된 값
        """
        check_expanding(self.circle_map, self.numerics.expansion_grid_n)
        values: dict[str, str] = {}
        if pipeline in ("periodic", "full-report"):
            values.update(self.periodic())
        if pipeline in ("density", "full-report"):
            values.update(self.density())
        if pipeline in ("conjugacy", "full-report"):
            values.update(self.conjugacy())
        if pipeline in ("entropy", "full-report"):
            values.update(self.entropy())
        return values

    def orbits(self) -> list[PeriodicOrbit]:
        if self._orbits is None:
            self._orbits = periodic_points_up_to(
                self.circle_map,
                self.numerics.circle_n_max,
                budget=self.numerics.circle_period_budget,
                executor=self.executor,
            )
        return self._orbits

    def invariant_density(self) -> DensityApprox:
        if self._density is None:
            self._density = invariant_density(
                self.circle_map,
                n_bins=self.numerics.ulam_bins,
                iters=self.numerics.density_iters,
                residual_tol=self.numerics.residual_tol,
                uniqueness_tol=self.numerics.uniqueness_tol,
                rng=self._rng(1),
                executor=self.executor,
            )
        return self._density

    def periodic(self) -> dict[str, str]:
        """주기 데이터, 단사 분할, (상수 데이터면) 쌍립시츠 부등식"""
        n_max = self.numerics.circle_n_max
        orbits = self.orbits()
        stats = constant_data_statistic(orbits, self.circle_map.degree)
        write_csv(orbits_frame(orbits), self.output_dir / "circle_periodic.csv")

        level = min(n_max, PARTITION_LEVEL_CAP)
        partition = injectivity_partition(
            self.circle_map, level, budget=self.numerics.circle_period_budget
        )
        same_period = [o for o in orbits if o.period == level] or periodic_points(
            self.circle_map, level, budget=self.numerics.circle_period_budget
        )
        multipliers = interval_multipliers(partition, same_period)
        write_csv(
            pd.DataFrame(
                {
                    "index": np.arange(len(partition.sizes)),
                    "left": partition.breakpoints,
                    "size": partition.sizes,
                    "multiplier": multipliers,
                    "product": partition.sizes * multipliers,
                }
            ),
            self.output_dir / "circle_partition.csv",
        )

        constant = stats.spread < self.numerics.tol_cd
        values = {
            "CONSTANT_DATA": format_flag(constant),
            "CONSTANT_DATA_SPREAD": format_float(stats.spread),
            "PERIODIC_MEAN": format_float(stats.mean),
            "LOG_D_GAP": format_float(stats.log_d_gap),
            "LOG_D_MATCH": format_flag(stats.log_d_gap < self.numerics.tol_cd),
        }
        if constant:
            rows = interval_inequality_report(
                self.circle_map,
                n_max,
                tol_cd=self.numerics.tol_cd,
                budget=self.numerics.circle_period_budget,
                orbits=orbits,
            )
            write_csv(
                pd.DataFrame([row.model_dump() for row in rows]),
                self.output_dir / "circle_inequality.csv",
            )
            values["INEQUALITY_WITHIN"] = format_flag(all(row.within for row in rows))

        logger.info(
            f"[Circle] periodic: {stats.orbit_count} orbits, spread={stats.spread:.3e}"
        )
        return values

    def density(self) -> dict[str, str]:
        """Ulam 밀도, ACIM 지수와 Birkhoff 대조"""
        density = self.invariant_density()
        exponent = acim_exponent(self.circle_map, density)
        birkhoff = birkhoff_exponent(
            self.circle_map,
            seeds=self.numerics.birkhoff_seeds,
            steps=self.numerics.birkhoff_steps,
            rng=self._rng(2),
            executor=self.executor,
        )
        write_columns(self.output_dir / "circle_density.txt", density.midpoints, density.weights)

        values = {
            "ACIM_EXPONENT": format_float(exponent),
            "ACIM_BIRKHOFF_GAP": format_float(abs(exponent - birkhoff)),
            "DENSITY_RESIDUAL": format_float(density.residual),
            "PUSHFORWARD_DEFECT": format_float(pushforward_defect(self.circle_map, density)),
        }
        if self._orbits is not None:
            values["PERIODIC_BIRKHOFF_GAP"] = format_float(
                periodic_vs_birkhoff(self._orbits, birkhoff)
            )
        return values

    def conjugacy(self) -> dict[str, str]:
        """기호 켤레, 정칙성 등급, 밀도 ODE 대조"""
        level = self.numerics.conjugacy_level
        hc = symbolic_conjugacy(self.circle_map, level, budget=self.numerics.circle_period_budget)
        fit = holder_exponent(hc)
        c_f = distortion_constant(self.circle_map, self.numerics.expansion_grid_n)
        report = bilipschitz_report(hc, c_f, self.numerics.drift_tol)

        write_columns(self.output_dir / "circle_conjugacy.txt", hc.grid, hc.values)
        write_csv(
            pd.DataFrame([row.model_dump() for row in regularity_table(hc)]),
            self.output_dir / "circle_regularity.csv",
        )

        density = self.invariant_density()
        lebesgue = DensityApprox(bins=density.bins, weights=np.ones(density.bins))
        ode = ode_conjugacy(
            lebesgue,
            density,
            z0=float(hc.values[0]),
            steps=self.numerics.ode_steps,
            wrap_tol=self.numerics.wrap_tol,
            density_floor=self.numerics.density_floor,
        )
        return {
            "REGULARITY_ALPHA": format_float(fit.alpha),
            "REGULARITY_R2": format_float(fit.r2),
            "DISTORTION_CONSTANT": format_float(c_f),
            "BILIPSCHITZ": format_flag(report.certified),
            "BILIPSCHITZ_DRIFT": format_float(report.drift),
            "CONJUGACY_RESIDUAL": format_float(conjugacy_residual(hc, self.circle_map)),
            "ODE_SYMBOLIC_DISTANCE": format_float(sup_distance(ode, hc)),
        }

    def entropy(self) -> dict[str, str]:
        """h_top = log d 와 ACIM 지수 비교"""
        h_top = math.log(self.circle_map.degree)
        exponent = acim_exponent(self.circle_map, self.invariant_density())
        return {
            "ENTROPY_H_TOP": format_float(h_top),
            "ENTROPY_ACIM_EXPONENT": format_float(exponent),
            "ENTROPY_RUELLE_GAP": format_float(h_top - exponent),
        }
