from rest_framework.routers import DefaultRouter
from django.urls import path, include
from .views import NetworkViewSet

router = DefaultRouter()
router.register(r'', NetworkViewSet, basename='network')

urlpatterns = [
    path('', include(router.urls)),
]
