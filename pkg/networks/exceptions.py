from estimators.exceptions import AnalysisError


class NetworkShapeError(AnalysisError):
    """Layer dimensions do not compose, or an input has the wrong length."""


class ScheduleError(AnalysisError):
    """A tuple schedule violated one of its construction invariants."""

    def __init__(self, layer, message):
        self.layer = layer
        super().__init__(f"Layer {layer}: {message}")
