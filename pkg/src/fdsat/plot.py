"""Figures of sweep and visibility tables."""

import seaborn as sns

MODE_LABELS = {'se_fdd_bps_hz': 'FDD', 'se_fd_bps_hz': 'FD'}


def plot_sweep(table, **facet_kws):
    """
    Plot spectral efficiency of both duplex modes against SIC.

    Additional arguments are passed to seaborn.FacetGrid.

    Parameters
    ----------
    table : pandas.DataFrame
        Results from `scenario.sweep_table` or `report.read_sweep_csv`.
    """
    long = table.melt(id_vars='sic_db', value_vars=list(MODE_LABELS),
                      var_name='mode', value_name='se_bps_hz')
    long['mode'] = long['mode'].map(MODE_LABELS)
    g = sns.FacetGrid(data=long, hue='mode', **facet_kws)
    g.map_dataframe(sns.lineplot, x='sic_db', y='se_bps_hz')
    g.set_xlabels('SIC (dB)')
    g.set_ylabels('Spectral efficiency (bps/Hz)')
    g.add_legend()
    return g


def plot_gain(table, **facet_kws):
    """Plot full-duplex gain against SIC."""
    g = sns.FacetGrid(data=table, **facet_kws)
    g.map_dataframe(sns.lineplot, x='sic_db', y='gain_percent')
    g.set_xlabels('SIC (dB)')
    g.set_ylabels('Gain (%)')
    return g


def plot_elevation(passes, **facet_kws):
    """
    Plot peak elevation of each pass over time.

    Parameters
    ----------
    passes : pandas.DataFrame
        Results from `scenario.visibility`, one panel per node.
    """
    g = sns.FacetGrid(data=passes, col='node', **facet_kws)
    g.map_dataframe(sns.scatterplot, x='max_elevation_epoch_s',
                    y='max_elevation_deg')
    g.set_xlabels('Time (s)')
    g.set_ylabels('Peak elevation (deg)')
    g.set(ylim=(0, 90))
    return g
