from drf_yasg.utils import swagger_auto_schema
from rest_framework import viewsets
from rest_framework.decorators import action
from rest_framework.response import Response

from estimators.views import AnalysisErrorMixin

from .serializers import BuildQuerySerializer, EvaluateSerializer, NetworkSerializer, WidthsQuerySerializer
from . import services


class NetworkViewSet(AnalysisErrorMixin, viewsets.ViewSet):
    """
    Exact ReLU max networks:

    - widths: layer widths of the order-(d-1) subpool max network
    - build: network JSON for a pairwise, d1 or heaviside network
    - evaluate: exact forward pass of a given or built network
    """

    @swagger_auto_schema(query_serializer=WidthsQuerySerializer)
    @action(detail=False, methods=["get"])
    def widths(self, request):
        params = self.query(WidthsQuerySerializer)
        return Response(services.widths_report(params["d"]))

    @swagger_auto_schema(query_serializer=BuildQuerySerializer)
    @action(detail=False, methods=["get"])
    def build(self, request):
        params = self.query(BuildQuerySerializer)
        net = services.build_network(params["kind"], params["d"], params["xi"])
        return Response(NetworkSerializer(net).data)

    @swagger_auto_schema(request_body=EvaluateSerializer)
    @action(detail=False, methods=["post"])
    def evaluate(self, request):
        serializer = EvaluateSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        params = serializer.validated_data
        if "network" in params:
            net = params["network"]["network"]
        else:
            net = services.build_network(params["kind"], params["d"], params["xi"])
        return Response(services.evaluate_network(net, params["x"]))
