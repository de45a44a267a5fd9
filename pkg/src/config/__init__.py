from dataclasses import dataclass, fields, replace
from typing import Dict, Optional

from src.exceptions import ConfigurationError


@dataclass(frozen=True)
class ToleranceConfig:
    """Configuração das tolerâncias numéricas"""

    # Decisões de posto
    rank_tol: float = 1e-10
    herm_tol: float = 1e-12
    psd_tol: float = 1e-10
    singular_tol: float = 1e-12

    # Contrações e consistência
    contraction_slack: float = 1e-8
    consistency_tol: float = 1e-8
    degeneracy_tol: float = 1e-9  # multiplicada pela dimensão

    # Avaliação
    cert_tol: float = 1e-9
    radius_guard: float = 1e-9
    contour_radius: float = 0.5
    contour_nodes: int = 128

    def is_valid(self) -> bool:
        """Valida configurações"""
        tolerances = (
            self.rank_tol, self.herm_tol, self.psd_tol, self.singular_tol,
            self.contraction_slack, self.consistency_tol, self.degeneracy_tol,
            self.cert_tol, self.radius_guard
        )
        if any(not (0.0 < tol < 1.0) for tol in tolerances):
            return False
        if not (0.0 < self.contour_radius < 1.0):
            return False
        if self.contour_nodes < 8:
            return False
        return True

    def with_overrides(self, overrides: Dict[str, object]) -> 'ToleranceConfig':
        """Retorna cópia com os campos nomeados substituídos"""
        known = {f.name for f in fields(self)}
        values = {}
        for name, raw in overrides.items():
            if name not in known:
                raise ConfigurationError(f"tolerância desconhecida: {name}")
            try:
                values[name] = int(raw) if name == "contour_nodes" else float(raw)
            except (TypeError, ValueError):
                raise ConfigurationError(f"valor inválido para {name}: {raw!r}")
        config = replace(self, **values)
        if not config.is_valid():
            raise ConfigurationError(f"configuração inválida após sobrescrita: {sorted(values)}")
        return config


class ConfigManager:
    """Gerenciador de configurações"""

    _instance: 'ConfigManager' = None
    _config: Optional[ToleranceConfig] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def set_config(self, config: ToleranceConfig) -> None:
        """Define configuração"""
        if not config.is_valid():
            raise ValueError("Configuração inválida")
        self._config = config

    def get_config(self) -> ToleranceConfig:
        """Obtém configuração atual (padrão se nenhuma foi definida)"""
        if self._config is None:
            return ToleranceConfig()
        return self._config

    def reset(self) -> None:
        self._config = None


def resolve_config(config: Optional[ToleranceConfig]) -> ToleranceConfig:
    """Configuração explícita ou a do gerenciador"""
    return config if config is not None else ConfigManager().get_config()


__all__ = ['ToleranceConfig', 'ConfigManager', 'resolve_config']
