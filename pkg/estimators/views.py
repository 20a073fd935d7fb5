import logging

from drf_yasg.utils import swagger_auto_schema
from rest_framework import status, viewsets
from rest_framework.decorators import action
from rest_framework.response import Response

from .exceptions import AnalysisError
from .models import RunManifest
from .serializers import (
    DimensionQuerySerializer,
    FitQuerySerializer,
    MeasureQuerySerializer,
    RunManifestSerializer,
    TableQuerySerializer,
)
from . import services

logger = logging.getLogger(__name__)


class AnalysisErrorMixin:
    """Domain errors become 400 {"error": message}."""

    def handle_exception(self, exc):
        if isinstance(exc, AnalysisError):
            logger.info("Rejected %s: %s", self.request.path, exc)
            return Response({"error": str(exc)}, status=status.HTTP_400_BAD_REQUEST)
        return super().handle_exception(exc)

    def query(self, serializer_class):
        serializer = serializer_class(data=self.request.query_params)
        serializer.is_valid(raise_exception=True)
        return serializer.validated_data


class EstimatorViewSet(AnalysisErrorMixin, viewsets.ViewSet):
    """
    Read-only estimator analysis:

    - fit: certified optimal R-estimator (cached)
    - table: every nonempty R up to d_max
    - full: closed-form full-R coefficients
    - l2: least-squares optimum
    - measure: volume where the error stays large
    """

    @swagger_auto_schema(query_serializer=FitQuerySerializer)
    @action(detail=False, methods=["get"])
    def fit(self, request):
        params = self.query(FitQuerySerializer)
        return Response(services.fit_report(params["d"], params["r"]))

    @swagger_auto_schema(query_serializer=TableQuerySerializer)
    @action(detail=False, methods=["get"])
    def table(self, request):
        params = self.query(TableQuerySerializer)
        return Response({"d_max": params["d_max"], "rows": services.table_report(params["d_max"])})

    @swagger_auto_schema(query_serializer=DimensionQuerySerializer)
    @action(detail=False, methods=["get"])
    def full(self, request):
        params = self.query(DimensionQuerySerializer)
        return Response(services.full_report(params["d"]))

    @swagger_auto_schema(query_serializer=DimensionQuerySerializer)
    @action(detail=False, methods=["get"])
    def l2(self, request):
        params = self.query(DimensionQuerySerializer)
        return Response(services.l2_report(params["d"]))

    @swagger_auto_schema(query_serializer=MeasureQuerySerializer)
    @action(detail=False, methods=["get"])
    def measure(self, request):
        params = self.query(MeasureQuerySerializer)
        return Response(services.measure_report(
            params["d"], params["r"], eps=params["eps"], samples=params["samples"], seed=params["seed"]
        ))


class RunManifestViewSet(viewsets.ReadOnlyModelViewSet):
    """Recorded command runs, newest first."""
    queryset = RunManifest.objects.all()
    serializer_class = RunManifestSerializer
