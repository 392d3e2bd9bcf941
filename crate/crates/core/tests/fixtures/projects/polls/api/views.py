from rest_framework import generics

from polls.models import Choice

from .serializers import ChoiceSerializer


class ChoiceList(generics.ListCreateAPIView):
    queryset = Choice.objects.all()
    serializer_class = ChoiceSerializer
