# -*- coding: utf-8 -*-
"""
Torus Report Service - 토러스 Anosov 사상 실험 파이프라인

원뿔 인증 후 주기 데이터, SRB 부피 지수, Franks 켤레, 불안정 엔트로피를 계산하고
아티팩트와 판정 값을 만든다.
"""

import logging
from pathlib import Path

import numpy as np
import pandas as pd

from src.application.common.decorators import log_execution
from src.application.common.formatters import (
    format_flag,
    format_float,
    render_key_values,
    write_columns,
    write_csv,
    write_text,
)
from src.application.common.parallel import ParallelExecutor
from src.application.domain.experiment.dto import NumericsSection
from src.application.domain.torus.conjugacy import (
    conjugacy_distance,
    conjugacy_residual_field,
    franks_solve,
    grid_injectivity_gap,
    periodic_equivariance_error,
    toral_holder_estimate,
)
from src.application.domain.torus.dto import (
    ConeCertificateDTO,
    IndexSpreadDTO,
    ToralPeriodicOrbit,
)
from src.application.domain.torus.dynamics import (
    AnosovMap,
    ConjugatedToralMap,
    cone_certify,
    grid_points,
)
from src.application.domain.torus.entropy import (
    entropy_report,
    periodic_flag_growth,
    srb_volume_exponent,
    uniform_convergence_profile,
)
from src.application.domain.torus.periodic import (
    conservativity_indicator,
    per_index_spread,
    periodic_orbits_up_to,
)

logger = logging.getLogger(__name__)


def orbits_frame(orbits: list[ToralPeriodicOrbit]) -> pd.DataFrame:
    """주기점 표 (period, x_1..x_d, exponent_1..exponent_d, jac_log)"""
    dim = len(orbits[0].point) if orbits else 0
    columns: dict[str, list[float]] = {"period": [o.period for o in orbits]}
    for c in range(dim):
        columns[f"x{c + 1}"] = [o.point[c] for o in orbits]
    for c in range(dim):
        columns[f"exponent{c + 1}"] = [o.exponents[c] for o in orbits]
    columns["jac_log"] = [o.jac_log for o in orbits]
    return pd.DataFrame(columns)


class TorusReportService:
    """토러스 사상 실험 서비스"""

    def __init__(
        self,
        toral_map: AnosovMap,
        numerics: NumericsSection,
        output_dir: Path,
        seed: int = 42,
        executor: ParallelExecutor | None = None,
    ):
        """
        Args:
            toral_map: Anosov 사상
            numerics: 수치 조절값
            output_dir: 아티팩트 디렉터리
            seed: 난수 시드
            executor: 병렬 실행기
        """
        self.toral_map = toral_map
        self.numerics = numerics
        self.output_dir = output_dir
        self.seed = seed
        self.executor = executor or ParallelExecutor()
        self._orbits: list[ToralPeriodicOrbit] | None = None
        self._spreads: list[IndexSpreadDTO] | None = None

    def _rng(self, stream: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, stream])

    # ==================== 파이프라인 ====================

    @log_execution
    def run(self, pipeline: str) -> dict[str, str]:
        """
        파이프라인 실행 (모든 파이프라인 앞에 원뿔 인증)

        Args:
            pipeline: periodic / density / conjugacy / entropy / full-report

        Returns:
            dict[str, str]: 판정 키와 포맷된 값
        """
        values = self.cone()
        if pipeline in ("periodic", "full-report"):
            values.update(self.periodic())
        if pipeline in ("density", "full-report"):
            values.update(self.density())
        if pipeline in ("conjugacy", "full-report"):
            values.update(self.conjugacy())
        if pipeline in ("entropy", "full-report"):
            values.update(self.entropy())
        return values

    def cone(self) -> dict[str, str]:
        certificate: ConeCertificateDTO = cone_certify(
            self.toral_map,
            self.numerics.cone_grid,
            gamma=self.numerics.cone_opening,
            executor=self.executor,
        )
        row = certificate.model_dump(exclude={"worst_point"})
        row.update({f"worst_x{c + 1}": v for c, v in enumerate(certificate.worst_point)})
        write_csv(pd.DataFrame([row]), self.output_dir / "torus_cone.csv")
        return {
            "CONE_MARGIN": format_float(certificate.margin),
            "CONE_DOMINATION": format_float(certificate.domination_margin),
        }

    def orbits(self) -> list[ToralPeriodicOrbit]:
        if self._orbits is None:
            self._orbits = periodic_orbits_up_to(
                self.toral_map,
                self.numerics.torus_n_max,
                budget=self.numerics.torus_period_budget,
                orbit_tol=self.numerics.orbit_identity_tol,
                executor=self.executor,
            )
        return self._orbits

    def spreads(self) -> list[IndexSpreadDTO]:
        """안정 지수 1..k, 불안정 지수 1..n 의 주기 통계"""
        if self._spreads is None:
            eigen = self.toral_map.eigen
            orbits = self.orbits()
            self._spreads = [
                per_index_spread(orbits, i, "s", eigen) for i in range(1, eigen.stable_count + 1)
            ] + [
                per_index_spread(orbits, i, "u", eigen)
                for i in range(1, eigen.unstable_count + 1)
            ]
        return self._spreads

    def periodic(self) -> dict[str, str]:
        """주기 데이터와 선형화 비교, Bowen 보존성 지표"""
        tol = self.numerics.tol_cd
        orbits = self.orbits()
        spreads = self.spreads()
        write_csv(orbits_frame(orbits), self.output_dir / "torus_periodic.csv")
        write_csv(
            pd.DataFrame([row.model_dump() for row in spreads]),
            self.output_dir / "torus_spread.csv",
        )

        max_spread = max(row.spread for row in spreads)
        values = {
            "CONSTANT_DATA": format_flag(max_spread < tol),
            "CONSTANT_DATA_SPREAD": format_float(max_spread),
        }
        for row in spreads:
            key = f"{row.side.upper()}{row.index}"
            values[f"LINEAR_GAP_{key}"] = format_float(row.gap_to_linear)
            values[f"LINEAR_MATCH_{key}"] = format_flag(row.gap_to_linear < tol)

        indicator = conservativity_indicator(orbits)
        values["CONSERVATIVE_INDICATOR"] = format_float(indicator)
        values["CONSERVATIVE"] = format_flag(indicator < tol)
        logger.info(f"[Torus] periodic: {len(orbits)} orbits, max spread={max_spread:.3e}")
        return values

    def density(self) -> dict[str, str]:
        """Lebesgue 전형 궤도의 부피 지수 (SRB 측도의 절대연속성 판정)"""
        volume = srb_volume_exponent(
            self.toral_map,
            seeds=self.numerics.srb_seeds,
            horizon=self.numerics.srb_horizon,
            transient=self.numerics.srb_transient,
            rng=self._rng(1),
            executor=self.executor,
        )
        return {"SRB_VOLUME_EXPONENT": format_float(volume)}

    def conjugacy(self) -> dict[str, str]:
        """Franks 변위장, 켤레 잔차, 주기점 등변성, 고유방향 Hölder 지수"""
        field = franks_solve(
            self.toral_map,
            self.numerics.franks_grid,
            iters=self.numerics.franks_iters,
            tol=self.numerics.franks_tol,
            executor=self.executor,
        )
        residual = conjugacy_residual_field(self.toral_map, field)
        points = grid_points(field.resolution, field.dim)
        displacement = field.values.reshape(-1, field.dim)
        write_columns(
            self.output_dir / "torus_franks.txt",
            *points.T,
            *displacement.T,
        )

        holder = toral_holder_estimate(field, self.toral_map.eigen)
        write_csv(
            pd.DataFrame([row.model_dump() for row in holder]),
            self.output_dir / "torus_holder.csv",
        )
        values = {
            "FRANKS_RESIDUAL": format_float(residual),
            "FRANKS_RESIDUAL_OK": format_flag(residual <= self.numerics.res_tol),
            "FRANKS_SUP_NORM": format_float(field.sup_norm),
            "EQUIVARIANCE_ERROR": format_float(
                periodic_equivariance_error(field, self.orbits())
            ),
            "INJECTIVITY_GAP": format_float(grid_injectivity_gap(field)),
        }
        if isinstance(self.toral_map, ConjugatedToralMap):
            values["FRANKS_DISTANCE"] = format_float(conjugacy_distance(field, self.toral_map))
        for row in holder:
            values[f"REGULARITY_ALPHA_{row.direction.upper()}"] = format_float(row.alpha)
        return values

    def entropy(self) -> dict[str, str]:
        """엔트로피 항등식 표와 유한 시간 지수의 균등 수렴"""
        f = self.toral_map
        report = entropy_report(
            f,
            seeds=self.numerics.srb_seeds,
            horizon=self.numerics.srb_horizon,
            transient=self.numerics.srb_transient,
            cocycle_points=self.numerics.cocycle_points,
            cocycle_horizon=self.numerics.cocycle_horizon,
            segment_horizon=self.numerics.segment_horizon,
            delta=self.numerics.segment_delta,
            rng=self._rng(2),
            executor=self.executor,
        )
        lines = [
            ("h_top_linear", format_float(report.h_top_linear)),
            ("chi_segment", format_float(report.chi_segment)),
        ]
        lines += [
            (f"chi_flag_{i}", format_float(chi)) for i, chi in enumerate(report.chi_cocycle, 1)
        ]
        lines += [
            ("srb_exponent_sum", format_float(report.srb_exponent_sum)),
            ("ruelle_gap", format_float(report.ruelle_gap)),
        ]
        write_text(self.output_dir / "entropy_report.txt", render_key_values(lines))

        values = {
            "ENTROPY_H_TOP": format_float(report.h_top_linear),
            "ENTROPY_CHI_SEGMENT": format_float(report.chi_segment),
        }
        for i, chi in enumerate(report.chi_cocycle, 1):
            values[f"ENTROPY_CHI_FLAG_{i}"] = format_float(chi)
        values["ENTROPY_SRB_SUM"] = format_float(report.srb_exponent_sum)
        values["ENTROPY_RUELLE_GAP"] = format_float(report.ruelle_gap)

        # 목표값: 주기 데이터의 불안정 지수 평균을 플래그 차원까지 더한 값
        unstable = [row.mean for row in self.spreads() if row.side == "u"]
        orbits = self.orbits()
        rows = []
        for i in range(1, f.eigen.unstable_count + 1):
            profile = uniform_convergence_profile(
                f,
                i,
                self.numerics.uniform_horizons,
                self.numerics.uniform_grid,
                target=float(sum(unstable[:i])),
                n_iter=self.numerics.flag_iter,
                executor=self.executor,
                orbits=orbits,
            )
            rows += [{"index": i, **row.model_dump()} for row in profile]
            values[f"UNIFORM_DEVIATION_{i}"] = format_float(profile[-1].deviation)
            # 지평이 모든 주기의 배수이면 편차 ≥ 주기점 궤도 지수 폭의 절반
            cycles = periodic_flag_growth(f, orbits, i, self.numerics.flag_iter)
            means = [c.mean() for c in cycles]
            half_spread = 0.5 * (max(means) - min(means)) if means else 0.0
            values[f"UNIFORM_HALF_SPREAD_{i}"] = format_float(half_spread)
        write_csv(pd.DataFrame(rows), self.output_dir / "torus_uniform.csv")
        return values
