from fdsat import geometry
from fdsat import scenario
from fdsat import usecases


class TimeAssess:
    """Assessment, sweeps and pass search on the feeder uplink scenario."""

    def setup(self):
        text = usecases.reference_scenario_text('fu_ud')
        self.scenario = scenario.load_scenario(text)
        self.resolved = scenario.resolve_geometry(self.scenario)
        self.observers = [self.scenario.nodes[n].position
                          for n in self.scenario.observer_names()]

    def time_assess(self):
        scenario.assess(self.scenario)

    def time_sweep_200(self):
        scenario.sweep_grid(self.scenario, '0:199:1', resolved=self.resolved)

    def time_best_pass(self):
        geometry.best_pass(self.scenario.constellation, self.observers,
                           86400.0)

    def time_visibility(self):
        scenario.visibility(self.scenario, 86400.0)
