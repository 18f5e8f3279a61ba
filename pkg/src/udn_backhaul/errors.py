"""Error types shared across the simulator modules."""


class PlacementInfeasibleError(RuntimeError):
    """Hard-core placement gave up after too many consecutive rejections."""

    def __init__(self, placed: int, requested: int, max_rejections: int):
        self.placed = placed
        self.requested = requested
        super().__init__(
            f"placement infeasible: placed {placed} of {requested} points "
            f"before {max_rejections} consecutive rejections"
        )


class GatewayOutsideRegionError(ValueError):
    """An explicit gateway position lies outside the macrocell hexagon."""


class NoConnectedBsError(ValueError):
    """No small cell reaches a gateway, so k(n) and capacity are undefined."""


class InstanceTooLargeError(ValueError):
    """Instance exceeds the exhaustive scheduling oracle's search bound."""
