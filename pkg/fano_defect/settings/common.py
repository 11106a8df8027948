"""Common Settings"""
from typing import Any

DEFAULT_FANO_DEFECT_SETTINGS = {
    'float_rank_tolerance': 1e-9,
    'search_safety_cap': 10 ** 4,
    'pgl_trials': 10,
    'pgl_seed': 20231,
}


def plugin_settings(settings: Any) -> None:
    """
    plugin settings
    """
    settings.FANO_DEFECT_SETTINGS = {
        **DEFAULT_FANO_DEFECT_SETTINGS,
        **getattr(settings, 'FANO_DEFECT_SETTINGS', {}),
    }
