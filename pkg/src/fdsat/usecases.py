"""Catalog of satellite full-duplex use cases."""

from __future__ import annotations

import enum
import functools
import logging
from dataclasses import dataclass
from importlib import resources

import pandas as pd

logger = logging.getLogger(__name__)

LIST_SEP = '|'
UNSPECIFIED_NOTE = 'RF parameters not specified for this use case'


class PriorityTier(str, enum.Enum):
    """Qualitative priority of a use case."""

    MOST_PROMISING = 'MostPromising'
    PROMISING = 'Promising'
    LESS_PROMISING = 'LessPromising'

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class UseCase:
    """
    One catalog entry.

    Parameters
    ----------
    id : str
        Short identifier, e.g. 'FU-UD'.

    name : str
        Use case name.

    application : str
        Applications targeted by the use case.

    bands : tuple of str
        Frequency band tags.

    advantages : tuple of str
        Advantages of full-duplex operation.

    priority_tier : PriorityTier
        Qualitative priority.

    fd_topology : str or None
        Name of the shipped reference scenario, if the use case has one.
    """

    id: str
    name: str
    application: str
    bands: tuple
    advantages: tuple
    priority_tier: PriorityTier
    fd_topology: str | None = None

    def to_dict(self):
        """Plain representation for JSON output."""
        return {
            'id': self.id,
            'name': self.name,
            'application': self.application,
            'bands': list(self.bands),
            'advantages': list(self.advantages),
            'priority_tier': self.priority_tier.value,
            'fd_topology': self.fd_topology,
        }


@dataclass(frozen=True)
class ScenarioTemplate:
    """Starting scenario for a use case."""

    use_case_id: str
    scenario: object
    parameters_specified: bool
    note: str = ''


def _data_text(name):
    return resources.files('fdsat').joinpath('data', name).read_text(
        encoding='utf-8'
    )


@functools.lru_cache(maxsize=None)
def _load_catalog():
    with resources.as_file(
        resources.files('fdsat').joinpath('data', 'usecases.csv')
    ) as data_file:
        df = pd.read_csv(data_file, dtype=str, keep_default_na=False)
    entries = []
    for row in df.itertuples(index=False):
        entries.append(UseCase(
            id=row.id,
            name=row.name,
            application=row.application,
            bands=tuple(row.bands.split(LIST_SEP)),
            advantages=tuple(row.advantages.split(LIST_SEP)),
            priority_tier=PriorityTier(row.priority_tier),
            fd_topology=row.fd_topology or None,
        ))
    logger.debug('loaded %d use cases', len(entries))
    return tuple(entries)


def catalog():
    """
    All use cases in table order.

    Returns
    -------
    entries : list of UseCase
        The eight catalog entries.
    """
    return list(_load_catalog())


def ids():
    """Identifiers of all use cases in table order."""
    return tuple(uc.id for uc in _load_catalog())


def get(use_case_id):
    """
    Look up one use case.

    Raises
    ------
    KeyError
        If the id is not in the catalog; the message lists valid ids.
    """
    for uc in _load_catalog():
        if uc.id == use_case_id:
            return uc
    raise KeyError(
        f'unknown use case {use_case_id!r}; valid ids: {", ".join(ids())}'
    )


def priority(use_case_id):
    """Priority tier of a use case."""
    return get(use_case_id).priority_tier


def catalog_table(use_case_id=None):
    """
    Catalog as a DataFrame for printing.

    Parameters
    ----------
    use_case_id : str, optional
        Restrict the table to one entry.

    Returns
    -------
    table : pandas.DataFrame
        One row per use case, list fields joined with commas.
    """
    entries = [get(use_case_id)] if use_case_id is not None else catalog()
    records = []
    for uc in entries:
        records.append({
            'id': uc.id,
            'name': uc.name,
            'application': uc.application,
            'bands': ', '.join(uc.bands),
            'advantages': '; '.join(uc.advantages),
            'priority_tier': uc.priority_tier.value,
        })
    return pd.DataFrame.from_records(records).set_index('id')


def default_scenario(use_case_id):
    """
    Starting scenario for a use case.

    Use cases with a reference scenario get it fully parameterized.
    Others get an empty template flagged as unspecified.

    Parameters
    ----------
    use_case_id : str
        Catalog id.

    Returns
    -------
    template : ScenarioTemplate
        Scenario (or None) and a flag telling whether it is usable.
    """
    uc = get(use_case_id)
    if uc.fd_topology is None:
        return ScenarioTemplate(uc.id, None, False, UNSPECIFIED_NOTE)

    from fdsat import scenario
    name = f'{uc.fd_topology}.toml'
    s = scenario.load_scenario(_data_text(name))
    return ScenarioTemplate(uc.id, s, True, f'reference scenario {name}')


def reference_scenario_text(name):
    """TOML text of a shipped reference scenario, e.g. 'fu_ud'."""
    known = sorted(uc.fd_topology for uc in _load_catalog() if uc.fd_topology)
    if name not in known:
        raise KeyError(
            f'unknown reference scenario {name!r}; valid: {", ".join(known)}'
        )
    return _data_text(f'{name}.toml')
